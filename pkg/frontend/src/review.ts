/** Review controller: every visible state change comes from a successful
 * API response; nothing is mutated optimistically, and a 409 triggers a
 * refresh so the view snaps back to the server's truth. */

import { ApiClient, ApiError } from "./api.js";
import type { ParagraphData } from "./types.js";

export type ReviewAction = "approve" | "reject" | "edit" | "pick_frame";

export interface ReviewView {
  paragraph: ParagraphData | null;
  message: string;
  colorsEnabled: boolean;
}

export class ReviewController {
  readonly view: ReviewView = { paragraph: null, message: "", colorsEnabled: true };
  private renderCallback: () => void = () => {};

  constructor(
    private readonly api: ApiClient,
    private documentKey: string,
    private pid: string,
  ) {}

  onChange(callback: () => void): void {
    this.renderCallback = callback;
  }

  async load(documentKey = this.documentKey, pid = this.pid): Promise<void> {
    this.documentKey = documentKey;
    this.pid = pid;
    try {
      this.view.paragraph = await this.api.getParagraph(documentKey, pid);
      this.view.message = "";
    } catch (error) {
      // API failure leaves a read-only view with a banner, never a crash
      this.view.message = error instanceof Error ? error.message : String(error);
    }
    this.renderCallback();
  }

  toggleColors(): void {
    this.view.colorsEnabled = !this.view.colorsEnabled;
    this.renderCallback();
  }

  async submit(setId: number, action: ReviewAction): Promise<void> {
    let outcome = "";
    try {
      if (action === "pick_frame") {
        await this.pickFrame(setId);
      } else {
        await this.api.transition(setId, action);
      }
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        outcome = `rejected by server: ${error.message}`;
      } else {
        outcome = error instanceof Error ? error.message : String(error);
      }
    }
    // refresh from the server first, then surface the action's outcome
    await this.load();
    if (outcome) {
      this.view.message = outcome;
      this.renderCallback();
    }
  }

  /** Keep the chosen frame candidate, reject its AUTO siblings on the same
   * sentence that share the same target span. */
  private async pickFrame(setId: number): Promise<void> {
    const paragraph = this.view.paragraph;
    if (!paragraph) return;
    const sentence = paragraph.sentences.find((s) => s.annotation_sets.some((a) => a.id === setId));
    if (!sentence) return;
    const chosen = sentence.annotation_sets.find((a) => a.id === setId);
    if (!chosen) return;
    const targetOf = (set: typeof chosen) => {
      const layer = set.layers.find((l) => l.name === "Target" && l.rank === 1);
      const label = layer?.labels[0] as { start?: number | null; end?: number | null } | undefined;
      return `${label?.start ?? ""}-${label?.end ?? ""}`;
    };
    const span = targetOf(chosen);
    await this.api.transition(setId, "approve");
    for (const sibling of sentence.annotation_sets) {
      if (sibling.id !== setId && sibling.status === "AUTO" && targetOf(sibling) === span) {
        await this.api.transition(sibling.id, "reject");
      }
    }
  }

  async markNi(setId: number, feName: string, itype: string): Promise<void> {
    let outcome = "";
    try {
      await this.api.markNullInstantiation(setId, feName, itype);
    } catch (error) {
      outcome = error instanceof Error ? error.message : String(error);
    }
    await this.load();
    if (outcome) {
      this.view.message = outcome;
      this.renderCallback();
    }
  }

  /** Fig.-5-style sentence checkboxes: bulk approve or reject every AUTO
   * set of one sentence. */
  async bulk(sentenceId: number, action: "approve" | "reject"): Promise<void> {
    const paragraph = this.view.paragraph;
    if (!paragraph) return;
    const sentence = paragraph.sentences.find((s) => s.id === sentenceId);
    if (!sentence) return;
    for (const set of sentence.annotation_sets) {
      if (set.status === "AUTO") {
        await this.api.transition(set.id, action);
      }
    }
    await this.load();
  }
}
