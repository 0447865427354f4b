/** Page bootstrap: document/paragraph picker, review region, color toggle,
 * and the shift-table view. The API base defaults to the page origin and
 * can be pointed elsewhere with ?api=http://host:port. */

import { ApiClient } from "./api.js";
import { renderParagraph } from "./render.js";
import { ReviewController } from "./review.js";
import { renderShiftTable } from "./shiftTable.js";
import type { SortKey } from "./shiftTable.js";

function apiBase(): string {
  const override = new URLSearchParams(window.location.search).get("api");
  return override ?? window.location.origin;
}

export async function boot(root: HTMLElement): Promise<void> {
  const api = new ApiClient(apiBase());

  const bar = document.createElement("div");
  bar.className = "toolbar";
  const documentSelect = document.createElement("select");
  documentSelect.id = "document-select";
  const paragraphSelect = document.createElement("select");
  paragraphSelect.id = "paragraph-select";
  const colorToggle = document.createElement("button");
  colorToggle.id = "color-toggle";
  colorToggle.textContent = "Turn Colors Off";
  const clearButton = document.createElement("button");
  clearButton.id = "clear-sentences";
  clearButton.textContent = "Clear Sentences";
  const analysisButton = document.createElement("button");
  analysisButton.id = "show-analysis";
  analysisButton.textContent = "Shift table";
  bar.append(documentSelect, paragraphSelect, colorToggle, clearButton, analysisButton);

  const banner = document.createElement("div");
  banner.className = "banner";
  const reviewRegion = document.createElement("div");
  reviewRegion.id = "review-region";
  const analysisRegion = document.createElement("div");
  analysisRegion.id = "analysis-region";
  root.append(bar, banner, reviewRegion, analysisRegion);

  const controller = new ReviewController(api, "", "");

  const redraw = () => {
    banner.textContent = controller.view.message;
    banner.style.display = controller.view.message ? "block" : "none";
    reviewRegion.replaceChildren();
    if (controller.view.paragraph) {
      reviewRegion.appendChild(
        renderParagraph(
          controller.view.paragraph,
          { colorsEnabled: controller.view.colorsEnabled },
          {
            onAction: (setId, action) => void controller.submit(setId, action),
            onMarkNi: (setId, feName, itype) => void controller.markNi(setId, feName, itype),
          },
        ),
      );
    }
    colorToggle.textContent = controller.view.colorsEnabled ? "Turn Colors Off" : "Turn Colors On";
  };
  controller.onChange(redraw);

  colorToggle.addEventListener("click", () => controller.toggleColors());
  clearButton.addEventListener("click", () => {
    reviewRegion.querySelectorAll<HTMLInputElement>(".sentence-check").forEach((box) => {
      box.checked = false;
    });
  });

  const loadParagraphList = async (key: string) => {
    const detail = await api.getDocument(key);
    paragraphSelect.replaceChildren();
    for (const pid of detail.paragraphs) {
      const option = document.createElement("option");
      option.value = pid;
      option.textContent = pid;
      paragraphSelect.appendChild(option);
    }
    if (detail.paragraphs.length) {
      await controller.load(key, detail.paragraphs[0]);
    }
  };

  documentSelect.addEventListener("change", () => void loadParagraphList(documentSelect.value));
  paragraphSelect.addEventListener("change", () =>
    void controller.load(documentSelect.value, paragraphSelect.value),
  );

  let sortKey: SortKey = "count";
  let descending = true;
  const drawAnalysis = async () => {
    const analysis = await api.getAnalysis("EN", "AR");
    analysisRegion.replaceChildren(renderShiftTable(analysis, sortKey, descending));
    analysisRegion.querySelectorAll<HTMLElement>("th.sortable").forEach((th) => {
      th.addEventListener("click", () => {
        const next = th.dataset.sortKey as SortKey;
        descending = next === sortKey ? !descending : next === "count";
        sortKey = next;
        void drawAnalysis();
      });
    });
  };
  analysisButton.addEventListener("click", () => void drawAnalysis());

  try {
    const { documents } = await api.listDocuments();
    for (const doc of documents) {
      const option = document.createElement("option");
      option.value = doc.key;
      option.textContent = `${doc.novel} / ${doc.chapter} (${doc.paragraphs})`;
      documentSelect.appendChild(option);
    }
    if (documents.length) {
      await loadParagraphList(documents[0].key);
    }
  } catch (error) {
    controller.view.message = `API unreachable: ${error instanceof Error ? error.message : error}`;
    redraw();
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  void boot(document.getElementById("app") as HTMLElement);
}
