/** Live-API integration: runs only when FRAMEALIGN_API points at a served
 * demo workspace, e.g.
 *
 *   python3 -m framealign.fixtures /tmp/demo
 *   framealign -w /tmp/demo serve --port 8710 &
 *   FRAMEALIGN_API=http://127.0.0.1:8710 npm test
 */

import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { renderParagraph } from "../src/render.js";
import { renderShiftTable } from "../src/shiftTable.js";

const base = process.env.FRAMEALIGN_API;
const liveDescribe = base ? describe : describe.skip;

liveDescribe("against a live review service", () => {
  const api = new ApiClient(base ?? "");

  it("renders the review paragraph with colored FE spans and a CNI badge", async () => {
    const p71 = await api.getParagraph("TheHobbit__6-review", "p71");
    const region = renderParagraph(p71, { colorsEnabled: true }, { onAction: () => {}, onMarkNi: () => {} });
    expect(region.querySelectorAll(".fe-span[class*='fe-color-']").length).toBeGreaterThanOrEqual(3);

    const p72 = await api.getParagraph("TheHobbit__6-review", "p72");
    const badges = renderParagraph(p72, { colorsEnabled: true }, { onAction: () => {}, onMarkNi: () => {} });
    expect([...badges.querySelectorAll(".ni-badge")].map((b) => b.textContent)).toContain("CNI");
  });

  it("approves an AUTO set and re-fetches AUTO_APP", async () => {
    const paragraph = await api.getParagraph("TheHobbit__6-review", "p71");
    const set = paragraph.sentences[0].annotation_sets.find((s) => s.status === "AUTO");
    if (!set) return; // a previous run already approved it; workspace is stateful
    const updated = await api.transition(set.id, "approve");
    expect(updated.status).toBe("AUTO_APP");
    const fetched = await api.getSet(set.id);
    expect(fetched.status).toBe("AUTO_APP");
  });

  it("shift table shows eleven rows and 85%", async () => {
    const analysis = await api.getAnalysis("EN", "AR");
    const view = renderShiftTable(analysis);
    expect(view.querySelectorAll("tr.shift-row").length).toBe(11);
    expect(view.querySelector(".parallelism")?.textContent).toContain("(85%)");
  });
});
