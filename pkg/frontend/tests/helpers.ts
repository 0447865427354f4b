/** Test helpers: fixture loading (captured from the real service) and a
 * fake fetch implementing the review API's transition semantics in memory. */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { AnnotationSetData, ParagraphData } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

export function loadFixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, "fixtures", name), "utf-8")) as T;
}

const TRANSITIONS: Record<string, string | undefined> = {
  "AUTO:approve": "AUTO_APP",
  "AUTO:edit": "MANUAL",
  "AUTO:reject": "REJECTED",
  "AUTO_APP:edit": "MANUAL",
  "MANUAL:edit": "MANUAL",
};

export interface FakeServer {
  fetch: (input: string, init?: RequestInit) => Promise<Response>;
  paragraphs: Map<string, ParagraphData>;
  calls: string[];
}

function jsonResponse(status: number, payload: unknown): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

/** Serve deep copies so client-side mutation can never masquerade as
 * server state; actions mutate the store exactly like the real service. */
export function makeFakeServer(paragraphFixtures: string[]): FakeServer {
  const paragraphs = new Map<string, ParagraphData>();
  for (const name of paragraphFixtures) {
    const paragraph = loadFixture<ParagraphData>(name);
    paragraphs.set(paragraph.pid, paragraph);
  }
  const calls: string[] = [];

  const findSet = (id: number): AnnotationSetData | undefined => {
    for (const paragraph of paragraphs.values()) {
      for (const sentence of paragraph.sentences) {
        const hit = sentence.annotation_sets.find((s) => s.id === id);
        if (hit) return hit;
      }
    }
    return undefined;
  };

  const fakeFetch = async (input: string, init?: RequestInit): Promise<Response> => {
    const url = new URL(input, "http://fake");
    const method = init?.method ?? "GET";
    calls.push(`${method} ${url.pathname}`);

    let match = url.pathname.match(/^\/documents\/[^/]+\/paragraphs\/([^/]+)$/);
    if (method === "GET" && match) {
      const paragraph = paragraphs.get(decodeURIComponent(match[1]));
      if (!paragraph) return jsonResponse(404, { error: "unknown paragraph" });
      return jsonResponse(200, JSON.parse(JSON.stringify(paragraph)));
    }

    match = url.pathname.match(/^\/sets\/(\d+)$/);
    if (method === "GET" && match) {
      const set = findSet(Number(match[1]));
      if (!set) return jsonResponse(404, { error: "unknown set" });
      return jsonResponse(200, JSON.parse(JSON.stringify(set)));
    }

    match = url.pathname.match(/^\/sets\/(\d+)\/(approve|reject|edit)$/);
    if (method === "POST" && match) {
      const set = findSet(Number(match[1]));
      if (!set) return jsonResponse(404, { error: "unknown set" });
      const next = TRANSITIONS[`${set.status}:${match[2]}`];
      if (!next) {
        return jsonResponse(409, {
          error: `action '${match[2]}' is not allowed from status '${set.status}'`,
          status: set.status,
        });
      }
      set.status = next;
      return jsonResponse(200, JSON.parse(JSON.stringify(set)));
    }

    match = url.pathname.match(/^\/sets\/(\d+)\/null_instantiation$/);
    if (method === "POST" && match) {
      const set = findSet(Number(match[1]));
      if (!set) return jsonResponse(404, { error: "unknown set" });
      const body = JSON.parse(String(init?.body ?? "{}")) as { fe_name: string; itype: string };
      const fe = set.layers.find((l) => l.name === "FE" && l.rank === 1);
      if (!fe) return jsonResponse(422, { error: "no FE layer" });
      const existing = fe.labels.find((l) => "name" in l && l.name === body.fe_name);
      if (existing) return jsonResponse(409, { error: `FE '${body.fe_name}' already labelled` });
      fe.labels.push({
        name: body.fe_name,
        start: null,
        end: null,
        fe_id: null,
        created_by: null,
        itype: body.itype,
      });
      return jsonResponse(200, JSON.parse(JSON.stringify(set)));
    }

    return jsonResponse(404, { error: `no such resource ${url.pathname}` });
  };

  return { fetch: fakeFetch, paragraphs, calls };
}
