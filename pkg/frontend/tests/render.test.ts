import { describe, expect, it } from "vitest";

import {
  buildConceptTree,
  buildEngineScores,
  buildModeToggle,
  buildResultItem,
  escapeHtml,
} from "../src/render.js";
import type { RankedResult } from "../src/types.js";

function parse(html: string): HTMLElement {
  const host = document.createElement("div");
  host.innerHTML = html;
  return host;
}

function someResult(overrides: Partial<RankedResult> = {}): RankedResult {
  return {
    engine: "google",
    classical_rank: 4,
    title: "A page",
    abstract: "About something.",
    url: "http://site.example/page",
    distance: 1.25,
    rsv: 0.73219,
    flags: [],
    contrib: [{ term_tf: 0.5, synonym_tf_sum: 0, hypernym_tf_sum: 0 }],
    semantic_rank: 2,
    ...overrides,
  };
}

describe("escapeHtml", () => {
  it("neutralizes markup characters", () => {
    expect(escapeHtml(`<a href="x">&'`)).toBe("&lt;a href=&quot;x&quot;&gt;&amp;&#039;");
  });
});

describe("buildResultItem", () => {
  it("shows both ranks and the rsv from the payload", () => {
    const host = parse(buildResultItem(someResult()));
    const item = host.querySelector<HTMLElement>("li.result");
    expect(item?.dataset.url).toBe("http://site.example/page");
    expect(host.querySelector(".semantic-rank")?.textContent).toBe("#2");
    expect(host.querySelector(".classical-rank")?.textContent).toBe("google #4");
    expect(host.querySelector(".rsv-badge")?.textContent).toContain("0.7322");
  });

  it("renders one icon per flag", () => {
    const host = parse(
      buildResultItem(someResult({ flags: ["dead_link", "parasite", "redundant"] })),
    );
    expect(host.querySelectorAll(".flag")).toHaveLength(3);
    expect(host.querySelector(".flag-dead_link")).not.toBeNull();
    expect(host.querySelector(".flag-redundant")).not.toBeNull();
    expect(host.querySelector(".flag-parasite")).not.toBeNull();
  });

  it("treats payload text as text, not markup", () => {
    const host = parse(buildResultItem(someResult({ title: "<script>boom()</script>" })));
    expect(host.querySelector("script")).toBeNull();
    expect(host.querySelector(".result-title")?.textContent).toContain("<script>boom()</script>");
  });

  it("omits the abstract block when the engine gave none", () => {
    const host = parse(buildResultItem(someResult({ abstract: "" })));
    expect(host.querySelector(".result-abstract")).toBeNull();
  });
});

describe("buildConceptTree", () => {
  it("gives every synonym its own leaf", () => {
    const host = parse(
      buildConceptTree([
        { term: "cat", synonyms: ["felid", "kitty", "mouser"], hypernyms: ["feline"] },
      ]),
    );
    const groups = host.querySelectorAll(".concept-group");
    expect(groups).toHaveLength(2);
    expect(groups[0].querySelectorAll("button.leaf")).toHaveLength(3);
    expect(groups[1].querySelectorAll("button.leaf")).toHaveLength(1);
    expect(host.querySelector("button.root")?.textContent?.trim()).toBe("cat");
  });

  it("collapses a term with no expansions to a bare root", () => {
    const host = parse(buildConceptTree([{ term: "zzgx", synonyms: [], hypernyms: [] }]));
    expect(host.querySelector("button.root")).not.toBeNull();
    expect(host.querySelector(".concept-group")).toBeNull();
  });

  it("tags every node with the axis term it belongs to", () => {
    const host = parse(
      buildConceptTree([{ term: "car", synonyms: ["auto"], hypernyms: ["vehicle"] }]),
    );
    const terms = Array.from(host.querySelectorAll<HTMLElement>("button[data-term]")).map(
      (node) => node.dataset.term,
    );
    expect(terms).toEqual(["car", "car", "car"]);
  });
});

describe("buildModeToggle", () => {
  it("marks the active order and offers one button per engine", () => {
    const host = parse(buildModeToggle(["google", "bing"], { mode: "semantic" }));
    const buttons = host.querySelectorAll<HTMLElement>("button");
    expect(buttons).toHaveLength(3);
    expect(buttons[0].classList.contains("active")).toBe(true);
    expect(buttons[1].dataset.engine).toBe("google");
    expect(buttons[2].dataset.engine).toBe("bing");
  });

  it("moves the active mark to the classical engine in play", () => {
    const host = parse(buildModeToggle(["google"], { mode: "classical", engine: "google" }));
    const active = host.querySelector<HTMLElement>("button.active");
    expect(active?.dataset.engine).toBe("google");
  });
});

describe("buildEngineScores", () => {
  it("formats each score out of ten", () => {
    const host = parse(
      buildEngineScores([{ engine: "bing", score: 7.5, footrule: 2, footrule_max: 8 }]),
    );
    const badge = host.querySelector<HTMLElement>(".engine-score");
    expect(badge?.textContent?.trim()).toBe("bing 7.50/10");
    expect(badge?.title).toBe("footrule 2 of 8");
  });
});
