import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { ReviewController } from "../src/review.js";
import { makeFakeServer } from "./helpers.js";

function controllerWith(fixtures: string[], pid: string) {
  const server = makeFakeServer(fixtures);
  const api = new ApiClient("http://fake", server.fetch);
  const controller = new ReviewController(api, "TheHobbit__6-review", pid);
  return { server, api, controller };
}

describe("review workflow", () => {
  it("approve round-trips through the API and the re-fetched set shows AUTO_APP", async () => {
    const { server, api, controller } = controllerWith(["paragraph_p71.json"], "p71");
    await controller.load();
    const layered = controller.view.paragraph!.sentences[0].annotation_sets[0];
    expect(layered.status).toBe("AUTO");

    await controller.submit(layered.id, "approve");

    // the view was refreshed from the server, not patched locally
    const refreshed = controller.view.paragraph!.sentences[0].annotation_sets[0];
    expect(refreshed.status).toBe("AUTO_APP");
    expect(server.calls).toContain(`POST /sets/${layered.id}/approve`);
    // independent re-fetch agrees
    const fetched = await api.getSet(layered.id);
    expect(fetched.status).toBe("AUTO_APP");
  });

  it("surfaces a 409 inline and resyncs state", async () => {
    const { controller } = controllerWith(["paragraph_p71.json"], "p71");
    await controller.load();
    const setId = controller.view.paragraph!.sentences[0].annotation_sets[0].id;
    await controller.submit(setId, "approve");
    await controller.submit(setId, "approve"); // illegal second approve
    expect(controller.view.message).toContain("rejected by server");
    expect(controller.view.paragraph!.sentences[0].annotation_sets[0].status).toBe("AUTO_APP");
  });

  it("pick_frame keeps the chosen candidate and rejects its sibling", async () => {
    const { server, controller } = controllerWith(["paragraph_p71.json"], "p71");
    // fabricate a two-candidate sentence: same target span, two AUTO sets
    const paragraph = server.paragraphs.get("p71")!;
    const sentence = paragraph.sentences[0];
    const original = sentence.annotation_sets[0];
    const sibling = JSON.parse(JSON.stringify(original)) as typeof original;
    sibling.id = original.id + 5000;
    sibling.frame = "Motion_directional";
    sentence.annotation_sets.push(sibling);

    await controller.load();
    await controller.submit(original.id, "pick_frame");

    const sets = controller.view.paragraph!.sentences[0].annotation_sets;
    const byId = new Map(sets.map((s) => [s.id, s.status]));
    expect(byId.get(original.id)).toBe("AUTO_APP");
    expect(byId.get(sibling.id)).toBe("REJECTED");
  });

  it("markNi adds a span-less badge-producing label via the API", async () => {
    const { controller } = controllerWith(["paragraph_p72.json"], "p72");
    await controller.load();
    const english = controller.view.paragraph!.sentences.find((s) => s.language === "EN")!;
    const setId = english.annotation_sets[0].id;
    await controller.markNi(setId, "Source", "INI");
    const refreshed = controller.view
      .paragraph!.sentences.find((s) => s.language === "EN")!
      .annotation_sets[0];
    const fe = refreshed.layers.find((l) => l.name === "FE")!;
    expect(fe.labels.some((l) => "itype" in l && l.itype === "INI")).toBe(true);
  });

  it("markNi on an already-labelled FE surfaces the conflict", async () => {
    const { controller } = controllerWith(["paragraph_p72.json"], "p72");
    await controller.load();
    const english = controller.view.paragraph!.sentences.find((s) => s.language === "EN")!;
    await controller.markNi(english.annotation_sets[0].id, "Self_mover", "CNI");
    expect(controller.view.message).toContain("already");
  });

  it("bulk approve drives every AUTO set of a sentence", async () => {
    const { controller } = controllerWith(["paragraph_p72.json"], "p72");
    await controller.load();
    const arabic = controller.view.paragraph!.sentences.find((s) => s.language === "AR")!;
    await controller.bulk(arabic.id, "approve");
    const refreshed = controller.view.paragraph!.sentences.find((s) => s.language === "AR")!;
    expect(refreshed.annotation_sets.every((s) => s.status === "AUTO_APP")).toBe(true);
  });

  it("API failure leaves a read-only banner instead of crashing", async () => {
    const { controller } = controllerWith([], "p71");
    await controller.load();
    expect(controller.view.paragraph).toBeNull();
    expect(controller.view.message).not.toBe("");
  });
});
