/** Shift-table view: sortable rows plus the parallelism summary. */

import type { AnalysisData, AnalysisRowData } from "./types.js";

export type SortKey = "count" | "source_frame" | "target_frame";

export function sortRows(rows: AnalysisRowData[], key: SortKey, descending: boolean): AnalysisRowData[] {
  const sorted = [...rows].sort((a, b) => {
    const left = a[key];
    const right = b[key];
    const order = typeof left === "number" && typeof right === "number"
      ? left - right
      : String(left).localeCompare(String(right));
    return descending ? -order : order;
  });
  return sorted;
}

export function renderShiftTable(
  analysis: AnalysisData,
  sortKey: SortKey = "count",
  descending = true,
): HTMLElement {
  const wrap = document.createElement("section");
  wrap.className = "shift-table-view";

  if (analysis.total === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No approved annotation pairs yet - nothing to tabulate.";
    wrap.appendChild(empty);
    return wrap;
  }

  const table = document.createElement("table");
  table.className = "shift-table";
  const head = document.createElement("tr");
  for (const [key, label] of [
    ["source_frame", `Evoked frame (${analysis.src})`],
    ["target_frame", `Evoked frame (${analysis.tgt})`],
    ["count", "# expressions"],
    ["lemmas", "example lemmas"],
  ] as const) {
    const th = document.createElement("th");
    th.textContent = label;
    if (key !== "lemmas") {
      th.dataset.sortKey = key;
      th.classList.add("sortable");
    }
    head.appendChild(th);
  }
  table.appendChild(head);

  for (const row of sortRows(analysis.rows, sortKey, descending)) {
    const tr = document.createElement("tr");
    tr.className = "shift-row";
    for (const value of [row.source_frame, row.target_frame, String(row.count), row.example_lemmas.join(", ")]) {
      const td = document.createElement("td");
      td.textContent = value;
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }

  const total = document.createElement("tr");
  total.className = "total-row";
  for (const value of ["total", "", String(analysis.total), ""]) {
    const td = document.createElement("td");
    td.textContent = value;
    total.appendChild(td);
  }
  table.appendChild(total);
  wrap.appendChild(table);

  const summary = document.createElement("p");
  summary.className = "parallelism";
  if (analysis.parallelism) {
    const { numerator, denominator, percentage } = analysis.parallelism;
    summary.textContent =
      `Framing parallelism: ${numerator}/${denominator} (${percentage}%) - ` +
      `${analysis.same_frame} same frame, ${analysis.related_shift} related, ` +
      `${analysis.unrelated_shift} unrelated`;
  } else {
    summary.textContent = "Framing parallelism: undefined (no pairs)";
  }
  wrap.appendChild(summary);
  return wrap;
}
