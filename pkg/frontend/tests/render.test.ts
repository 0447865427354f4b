import { describe, expect, it } from "vitest";

import { feColorClass, feColorIndex } from "../src/colors.js";
import { allowedActions, renderParagraph, renderSentenceRow } from "../src/render.js";
import type { ParagraphData } from "../src/types.js";
import { loadFixture } from "./helpers.js";

const noopHandlers = { onAction: () => {}, onMarkNi: () => {} };

describe("aligned paragraph rendering", () => {
  it("renders at least three color-coded FE spans for the layered set", () => {
    const paragraph = loadFixture<ParagraphData>("paragraph_p71.json");
    const region = renderParagraph(paragraph, { colorsEnabled: true }, noopHandlers);
    const colored = region.querySelectorAll(".fe-span[class*='fe-color-']");
    expect(colored.length).toBeGreaterThanOrEqual(3);
    // decorated text still reads exactly like the source sentence
    const arabicRow = region.querySelector(".sentence-text[dir='rtl']");
    expect(arabicRow?.textContent).toBe(paragraph.sentences[0].text);
  });

  it("marks the target span and keeps it when colors go off", () => {
    const paragraph = loadFixture<ParagraphData>("paragraph_p71.json");
    const on = renderParagraph(paragraph, { colorsEnabled: true }, noopHandlers);
    expect(on.querySelectorAll(".target").length).toBeGreaterThan(0);
    const off = renderParagraph(paragraph, { colorsEnabled: false }, noopHandlers);
    expect(off.querySelectorAll(".target").length).toBeGreaterThan(0);
    expect(off.querySelectorAll("[class*='fe-color-']").length).toBe(0);
  });

  it("color toggle changes presentation only, never the data", () => {
    const paragraph = loadFixture<ParagraphData>("paragraph_p71.json");
    const before = JSON.stringify(paragraph);
    renderParagraph(paragraph, { colorsEnabled: true }, noopHandlers);
    renderParagraph(paragraph, { colorsEnabled: false }, noopHandlers);
    expect(JSON.stringify(paragraph)).toBe(before);
  });

  it("shows a span-less CNI badge beside the sentence", () => {
    const paragraph = loadFixture<ParagraphData>("paragraph_p72.json");
    const region = renderParagraph(paragraph, { colorsEnabled: true }, noopHandlers);
    const badges = [...region.querySelectorAll(".ni-badge")].map((b) => b.textContent);
    expect(badges).toContain("CNI");
    expect(badges).toContain("DNI");
  });

  it("renders Arabic rtl and English ltr", () => {
    const paragraph = loadFixture<ParagraphData>("paragraph_p72.json");
    const region = renderParagraph(paragraph, { colorsEnabled: true }, noopHandlers);
    const directions = [...region.querySelectorAll(".sentence-text")].map((el) => el.getAttribute("dir"));
    expect(directions).toEqual(["rtl", "ltr"]);
  });

  it("stacks classes when spans overlap instead of dropping one", () => {
    const sentence = {
      id: 1,
      language: "AR",
      direction: "rtl" as const,
      text: "تدحرجت الحجارة هنا في الوادي البعيد جدا جدا",
      annotation_sets: [
        {
          id: 9,
          sentence_id: 1,
          frame: "Self_motion",
          status: "AUTO",
          created_date: "",
          layers: [
            {
              name: "Target",
              rank: 1,
              labels: [{ name: "Target", start: 0, end: 5, fe_id: null, created_by: null, itype: null }],
            },
            {
              name: "FE",
              rank: 1,
              labels: [{ name: "Self_mover", start: 5, end: 5, fe_id: null, created_by: null, itype: null }],
            },
          ],
        },
      ],
    };
    const row = renderSentenceRow(sentence, { colorsEnabled: true });
    const overlapped = [...row.querySelectorAll("span")].find(
      (el) => el.classList.contains("target") && el.classList.contains("fe-span"),
    );
    expect(overlapped).toBeDefined();
    expect(overlapped?.textContent).toBe(sentence.text[5]);
    expect(row.querySelector(".sentence-text")?.textContent).toBe(sentence.text);
  });

  it("sentence with no FE spans still highlights the target only", () => {
    const paragraph = loadFixture<ParagraphData>("paragraph_p71.json");
    const english = paragraph.sentences.find((s) => s.language === "EN")!;
    const row = renderSentenceRow(english, { colorsEnabled: true });
    expect(row.querySelectorAll(".fe-span").length).toBe(0);
  });
});

describe("deterministic FE colors", () => {
  it("is stable for a given name", () => {
    expect(feColorClass("Self_mover")).toBe(feColorClass("Self_mover"));
    expect(feColorIndex("Path")).toBe(feColorIndex("Path"));
  });

  it("stays inside the palette", () => {
    for (const name of ["Self_mover", "Path", "Goal", "Source", "Theme", "Area", "مسار"]) {
      expect(feColorIndex(name)).toBeGreaterThanOrEqual(0);
      expect(feColorIndex(name)).toBeLessThan(10);
    }
  });
});

describe("action gating", () => {
  it("AUTO allows approve/reject/edit; AUTO_APP only edit; REJECTED nothing", () => {
    expect(allowedActions("AUTO")).toEqual(["approve", "reject", "edit"]);
    expect(allowedActions("AUTO_APP")).toEqual(["edit"]);
    expect(allowedActions("MANUAL")).toEqual(["edit"]);
    expect(allowedActions("REJECTED")).toEqual([]);
  });

  it("renders illegal actions as disabled buttons", () => {
    const paragraph = loadFixture<ParagraphData>("paragraph_p71.json");
    const set = { ...paragraph.sentences[0].annotation_sets[0], status: "AUTO_APP" };
    const withApproved: ParagraphData = {
      pid: paragraph.pid,
      sentences: [{ ...paragraph.sentences[0], annotation_sets: [set] }],
    };
    const region = renderParagraph(withApproved, { colorsEnabled: true }, noopHandlers);
    const approve = region.querySelector<HTMLButtonElement>(".action-approve");
    expect(approve?.disabled).toBe(true);
    const edit = region.querySelector<HTMLButtonElement>(".action-edit");
    expect(edit?.disabled).toBe(false);
  });
});
