/** HTML builders for every panel on the page.
 *
 * Builders are pure string functions so they can be unit tested without a
 * DOM.  All payload text goes through escapeHtml before interpolation.
 */

import type { EngineScore, RankedResult, TermExpansion, UnavailableEngine } from "./types.js";
import type { RankingMode } from "./state.js";

const FLAG_ICONS: Record<string, { icon: string; label: string }> = {
  dead_link: { icon: "✖", label: "dead link" },
  redundant: { icon: "⧉", label: "duplicate host" },
  parasite: { icon: "⚠", label: "link parasite" },
};

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#039;");
}

function buildFlagIcons(flags: string[]): string {
  return flags
    .map((flag) => {
      const known = FLAG_ICONS[flag];
      if (!known) {
        return `<span class="flag" title="${escapeHtml(flag)}">?</span>`;
      }
      return `<span class="flag flag-${escapeHtml(flag)}" title="${known.label}">${known.icon}</span>`;
    })
    .join("");
}

export function buildResultItem(result: RankedResult): string {
  return `
    <li class="result" data-url="${escapeHtml(result.url)}">
      <span class="semantic-rank">#${result.semantic_rank}</span>
      <div class="result-body">
        <div class="result-title">
          ${escapeHtml(result.title)}
          ${buildFlagIcons(result.flags)}
        </div>
        ${result.abstract ? `<div class="result-abstract">${escapeHtml(result.abstract)}</div>` : ""}
        <a class="result-url" href="${escapeHtml(result.url)}">${escapeHtml(result.url)}</a>
      </div>
      <div class="result-badges">
        <span class="rsv-badge" title="retrieval status value">rsv ${result.rsv.toFixed(4)}</span>
        <span class="classical-rank">${escapeHtml(result.engine)} #${result.classical_rank}</span>
      </div>
    </li>
  `;
}

export function buildResultList(results: RankedResult[]): string {
  return results.map(buildResultItem).join("");
}

export function buildEngineScores(scores: EngineScore[]): string {
  return scores
    .map(
      (score) => `
        <span class="engine-score" data-engine="${escapeHtml(score.engine)}"
              title="footrule ${score.footrule} of ${score.footrule_max}">
          ${escapeHtml(score.engine)} ${score.score.toFixed(2)}/10
        </span>
      `,
    )
    .join("");
}

export function buildUnavailableNote(engines: UnavailableEngine[]): string {
  if (engines.length === 0) {
    return "";
  }
  const names = engines.map((entry) => escapeHtml(entry.engine)).join(", ");
  return `<span class="unavailable-note">no answer from ${names}</span>`;
}

export function buildSessionMeta(sessionId: string, query: string): string {
  return `
    <span class="session-query">${escapeHtml(query)}</span>
    <span class="session-id">session ${escapeHtml(sessionId)}</span>
  `;
}

export function buildModeToggle(engines: string[], active: RankingMode): string {
  const semanticOn = active.mode === "semantic";
  const buttons = [
    `<button type="button" data-mode="semantic"
             class="${semanticOn ? "active" : ""}" aria-pressed="${semanticOn}">semantic</button>`,
  ];
  for (const engine of engines) {
    const on = active.mode === "classical" && active.engine === engine;
    buttons.push(
      `<button type="button" data-mode="classical" data-engine="${escapeHtml(engine)}"
               class="${on ? "active" : ""}" aria-pressed="${on}">classical: ${escapeHtml(engine)}</button>`,
    );
  }
  return buttons.join("");
}

export function buildEngineChoices(engines: string[]): string {
  return engines
    .map(
      (engine) => `
        <label class="engine-choice">
          <input type="checkbox" value="${escapeHtml(engine)}" checked>
          ${escapeHtml(engine)}
        </label>
      `,
    )
    .join("");
}

function buildConceptGroup(term: string, kind: string, words: string[]): string {
  if (words.length === 0) {
    return "";
  }
  const leaves = words
    .map(
      (word) => `
        <li>
          <button type="button" class="concept leaf" data-term="${escapeHtml(term)}">
            ${escapeHtml(word)}
          </button>
        </li>
      `,
    )
    .join("");
  return `
    <div class="concept-group">
      <span class="group-label">${kind}</span>
      <ul>${leaves}</ul>
    </div>
  `;
}

export function buildConceptTree(entries: TermExpansion[]): string {
  const roots = entries
    .map(
      (entry) => `
        <li class="concept-root">
          <button type="button" class="concept root" data-term="${escapeHtml(entry.term)}">
            ${escapeHtml(entry.term)}
          </button>
          ${buildConceptGroup(entry.term, "synonyms", entry.synonyms)}
          ${buildConceptGroup(entry.term, "hypernyms", entry.hypernyms)}
        </li>
      `,
    )
    .join("");
  return `<ul class="concept-tree">${roots}</ul>`;
}

export function buildErrorBanner(message: string): string {
  return `<div class="banner error">${escapeHtml(message)}</div>`;
}

export function buildNotice(message: string): string {
  return `<div class="banner notice">${escapeHtml(message)}</div>`;
}
