/** DOM rendering for the aligned-paragraph review region.
 *
 * Sentences render side by side (stacked rows), each with its target span
 * highlighted and FE spans color-coded; null-instantiated FEs show as
 * badges beside the sentence. Offsets from the API are inclusive
 * code-point indices and are interpreted logically: right-to-left scripts
 * get dir="rtl" and the browser handles visual order.
 */

import { feColorClass } from "./colors.js";
import type { AnnotationSetData, ParagraphData, SentenceData, SpanLabelData } from "./types.js";
import { hasSpan, spanLabels } from "./types.js";

export interface RenderOptions {
  colorsEnabled: boolean;
  /** Restrict decorations to one annotation set (otherwise all sets). */
  selectedSetId?: number;
}

interface Decoration {
  start: number;
  end: number; // inclusive
  classes: string[];
  title: string;
}

function decorationsFor(set: AnnotationSetData, colorsEnabled: boolean): Decoration[] {
  const out: Decoration[] = [];
  for (const label of spanLabels(set, "Target")) {
    if (hasSpan(label)) {
      out.push({ start: label.start, end: label.end, classes: ["target"], title: `Target · set ${set.id}` });
    }
  }
  for (const label of spanLabels(set, "FE")) {
    if (!hasSpan(label)) continue;
    const classes = ["fe-span"];
    if (colorsEnabled) classes.push(feColorClass(label.name));
    out.push({ start: label.start, end: label.end, classes, title: label.name });
  }
  return out;
}

/** Split text on every decoration boundary so overlapping spans (a target
 * sharing an offset with an FE, say) stack their classes instead of
 * fighting over the DOM. */
export function segmentText(text: string, decorations: Decoration[]): HTMLElement[] {
  const cuts = new Set<number>([0, text.length]);
  for (const d of decorations) {
    if (d.start < text.length) cuts.add(Math.max(0, d.start));
    cuts.add(Math.min(text.length, d.end + 1));
  }
  const points = [...cuts].sort((a, b) => a - b);
  const segments: HTMLElement[] = [];
  for (let i = 0; i + 1 < points.length; i++) {
    const [from, to] = [points[i], points[i + 1]];
    if (from >= to) continue;
    const span = document.createElement("span");
    span.textContent = text.slice(from, to);
    const covering = decorations.filter((d) => d.start <= from && d.end >= to - 1);
    const classes = [...new Set(covering.flatMap((d) => d.classes))];
    if (classes.length) {
      span.className = classes.join(" ");
      span.title = covering.map((d) => d.title).join(", ");
    }
    segments.push(span);
  }
  return segments;
}

function statusBadge(status: string): HTMLElement {
  const badge = document.createElement("span");
  badge.className = `status-badge status-${status.toLowerCase()}`;
  badge.textContent = status;
  return badge;
}

function niBadges(set: AnnotationSetData): HTMLElement[] {
  return spanLabels(set, "FE")
    .filter((label): label is SpanLabelData & { itype: string } => label.itype !== null)
    .map((label) => {
      const badge = document.createElement("span");
      badge.className = "ni-badge";
      badge.textContent = label.itype;
      badge.title = `${label.name}: ${label.itype}`;
      return badge;
    });
}

export function renderSentenceRow(sentence: SentenceData, options: RenderOptions): HTMLElement {
  const row = document.createElement("div");
  row.className = "sentence-row";
  row.dataset.sentenceId = String(sentence.id);

  const check = document.createElement("input");
  check.type = "checkbox";
  check.className = "sentence-check";
  row.appendChild(check);

  const textBox = document.createElement("div");
  textBox.className = "sentence-text";
  textBox.dir = sentence.direction;
  textBox.lang = sentence.language.toLowerCase();

  const sets = sentence.annotation_sets.filter(
    (s) => options.selectedSetId === undefined || s.id === options.selectedSetId,
  );
  const decorations = sets.flatMap((s) => decorationsFor(s, options.colorsEnabled));
  for (const segment of segmentText(sentence.text, decorations)) {
    textBox.appendChild(segment);
  }
  row.appendChild(textBox);

  for (const set of sets) {
    for (const badge of niBadges(set)) {
      row.appendChild(badge);
    }
  }
  const tag = document.createElement("span");
  tag.className = "language-tag";
  tag.textContent = sentence.language;
  row.appendChild(tag);
  return row;
}

export interface SetCardHandlers {
  onAction(setId: number, action: "approve" | "reject" | "edit" | "pick_frame"): void;
  onMarkNi(setId: number, feName: string, itype: string): void;
}

/** Actions legal for a set's current status; illegal ones render disabled
 * and are never sent. */
export function allowedActions(status: string): Array<"approve" | "reject" | "edit"> {
  switch (status) {
    case "AUTO":
      return ["approve", "reject", "edit"];
    case "AUTO_APP":
      return ["edit"];
    case "MANUAL":
      return ["edit"];
    default:
      return [];
  }
}

export function renderSetCard(
  set: AnnotationSetData,
  handlers: SetCardHandlers,
  siblingCount = 0,
): HTMLElement {
  const card = document.createElement("div");
  card.className = "set-card";
  card.dataset.setId = String(set.id);

  const head = document.createElement("div");
  head.className = "set-head";
  const frame = document.createElement("span");
  frame.className = "frame-name";
  frame.textContent = set.frame ?? "(no frame)";
  head.appendChild(frame);
  head.appendChild(statusBadge(set.status));
  card.appendChild(head);

  const legal = new Set<string>(allowedActions(set.status));
  const actions = document.createElement("div");
  actions.className = "set-actions";
  for (const action of ["approve", "reject", "edit"] as const) {
    const button = document.createElement("button");
    button.textContent = action;
    button.className = `action-${action}`;
    button.disabled = !legal.has(action);
    if (!button.disabled) {
      button.addEventListener("click", () => handlers.onAction(set.id, action));
    }
    actions.appendChild(button);
  }
  if (siblingCount > 1 && set.status === "AUTO") {
    const pick = document.createElement("button");
    pick.textContent = "pick this frame";
    pick.className = "action-pick_frame";
    pick.addEventListener("click", () => handlers.onAction(set.id, "pick_frame"));
    actions.appendChild(pick);
  }
  card.appendChild(actions);

  const ni = document.createElement("form");
  ni.className = "ni-form";
  const feInput = document.createElement("input");
  feInput.placeholder = "core FE name";
  feInput.className = "ni-fe-name";
  const itypeSelect = document.createElement("select");
  itypeSelect.className = "ni-itype";
  for (const value of ["CNI", "DNI", "INI"]) {
    const option = document.createElement("option");
    option.value = value;
    option.textContent = value;
    itypeSelect.appendChild(option);
  }
  const mark = document.createElement("button");
  mark.textContent = "mark NI";
  mark.type = "submit";
  ni.append(feInput, itypeSelect, mark);
  ni.addEventListener("submit", (event) => {
    event.preventDefault();
    if (feInput.value) handlers.onMarkNi(set.id, feInput.value, itypeSelect.value);
  });
  card.appendChild(ni);
  return card;
}

export function renderParagraph(
  paragraph: ParagraphData,
  options: RenderOptions,
  handlers: SetCardHandlers,
): HTMLElement {
  const region = document.createElement("section");
  region.className = "paragraph-region";
  region.dataset.pid = paragraph.pid;

  const heading = document.createElement("h3");
  heading.textContent = paragraph.pid;
  region.appendChild(heading);

  for (const sentence of paragraph.sentences) {
    region.appendChild(renderSentenceRow(sentence, options));
    // frame candidates for one target: AUTO siblings sharing the span
    const autoCount = sentence.annotation_sets.filter((s) => s.status === "AUTO").length;
    for (const set of sentence.annotation_sets) {
      region.appendChild(renderSetCard(set, handlers, autoCount));
    }
  }
  return region;
}
