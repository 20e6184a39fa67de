/** Wires the static page to the API: search, ranking toggle, concept tree.
 *
 * Results are rendered once per search; switching between the semantic and
 * classical orders only moves the existing list nodes around, so a result's
 * element identity is stable for the lifetime of a session.
 */

import { ApiError, fetchHealth, fetchView, search } from "./api.js";
import {
  buildConceptTree,
  buildEngineChoices,
  buildEngineScores,
  buildErrorBanner,
  buildModeToggle,
  buildNotice,
  buildResultList,
  buildSessionMeta,
  buildUnavailableNote,
} from "./render.js";
import { highlightedUrls, initialState, type RankingMode, type UiState } from "./state.js";
import type { SearchParams, Session } from "./types.js";

export interface AppHandle {
  /** Resolves once the engine choices have been populated from the API. */
  ready: Promise<void>;
  state: UiState;
  submitQuery(): Promise<void>;
  applyView(ranking: RankingMode): Promise<void>;
}

function mustFind<T extends Element>(doc: Document, selector: string): T {
  const element = doc.querySelector<T>(selector);
  if (!element) {
    throw new Error(`page skeleton is missing ${selector}`);
  }
  return element;
}

function describeError(error: unknown): string {
  if (error instanceof ApiError) {
    return error.message;
  }
  return "could not reach the search service";
}

export function initApp(doc: Document, base = ""): AppHandle {
  const el = {
    form: mustFind<HTMLFormElement>(doc, "#search-form"),
    query: mustFind<HTMLInputElement>(doc, "#query-input"),
    engines: mustFind<HTMLElement>(doc, "#engine-choices"),
    submit: mustFind<HTMLButtonElement>(doc, "#submit-button"),
    banner: mustFind<HTMLElement>(doc, "#banner"),
    panel: mustFind<HTMLElement>(doc, "#session-panel"),
    meta: mustFind<HTMLElement>(doc, "#session-meta"),
    scores: mustFind<HTMLElement>(doc, "#engine-scores"),
    toggle: mustFind<HTMLElement>(doc, "#mode-toggle"),
    results: mustFind<HTMLElement>(doc, "#result-list"),
    conceptPanel: mustFind<HTMLElement>(doc, "#concept-panel"),
    conceptTree: mustFind<HTMLElement>(doc, "#concept-tree"),
  };
  const state = initialState(base);
  let inFlight: AbortController | null = null;

  function showBanner(html: string): void {
    el.banner.innerHTML = html;
  }

  function clearBanner(): void {
    el.banner.innerHTML = "";
  }

  function setBusy(busy: boolean): void {
    el.submit.disabled = busy;
    el.query.disabled = busy;
  }

  function checkedEngines(): string[] {
    const boxes = el.engines.querySelectorAll<HTMLInputElement>("input[type=checkbox]");
    return Array.from(boxes)
      .filter((box) => box.checked)
      .map((box) => box.value);
  }

  function renderSession(session: Session): void {
    state.session = session;
    state.ranking = { mode: "semantic" };
    state.selectedTerm = null;
    el.meta.innerHTML = buildSessionMeta(session.session_id, session.query);
    el.scores.innerHTML =
      buildEngineScores(session.engine_scores) +
      buildUnavailableNote(session.engines_unavailable);
    el.toggle.innerHTML = buildModeToggle(session.engines_used, state.ranking);
    el.results.innerHTML = buildResultList(session.results);
    el.conceptTree.innerHTML = buildConceptTree(session.semantic_vector.entries);
    el.panel.hidden = false;
    el.conceptPanel.hidden = false;
  }

  /** Move the existing result nodes into the given url order. */
  function reorderResults(urls: string[]): void {
    const byUrl = new Map<string, Element>();
    for (const item of Array.from(el.results.children)) {
      const url = (item as HTMLElement).dataset.url;
      if (url) {
        byUrl.set(url, item);
      }
    }
    for (const url of urls) {
      const item = byUrl.get(url);
      if (item) {
        el.results.appendChild(item);
      }
    }
  }

  function selectTerm(term: string | null): void {
    const session = state.session;
    if (!session) {
      return;
    }
    state.selectedTerm = term;
    const marked = highlightedUrls(session, term);
    for (const item of Array.from(el.results.children)) {
      const url = (item as HTMLElement).dataset.url ?? "";
      item.classList.toggle("highlight", marked.has(url));
    }
    for (const node of Array.from(el.conceptTree.querySelectorAll("button[data-term]"))) {
      const matches = term !== null && (node as HTMLElement).dataset.term === term;
      node.classList.toggle("selected", matches);
    }
  }

  async function submitQuery(): Promise<void> {
    const query = el.query.value.trim();
    clearBanner();
    if (!query) {
      showBanner(buildNotice("Type a query first."));
      return;
    }
    const params: SearchParams = { query };
    const engines = checkedEngines();
    if (engines.length > 0) {
      params.engines = engines;
    }
    inFlight?.abort();
    const controller = new AbortController();
    inFlight = controller;
    setBusy(true);
    try {
      const session = await search(base, params, controller.signal);
      if (inFlight === controller) {
        renderSession(session);
      }
    } catch (error) {
      if (!controller.signal.aborted) {
        showBanner(buildErrorBanner(describeError(error)));
      }
    } finally {
      if (inFlight === controller) {
        inFlight = null;
        setBusy(false);
      }
    }
  }

  async function applyView(ranking: RankingMode): Promise<void> {
    const session = state.session;
    if (!session) {
      return;
    }
    clearBanner();
    try {
      const view = await fetchView(
        base,
        session.session_id,
        ranking.mode,
        ranking.mode === "classical" ? ranking.engine : undefined,
      );
      reorderResults(view.results.map((result) => result.url));
      state.ranking = ranking;
      el.toggle.innerHTML = buildModeToggle(session.engines_used, ranking);
    } catch (error) {
      showBanner(buildErrorBanner(describeError(error)));
    }
  }

  el.form.addEventListener("submit", (event) => {
    event.preventDefault();
    void submitQuery();
  });

  el.toggle.addEventListener("click", (event) => {
    const button = (event.target as Element).closest<HTMLElement>("button[data-mode]");
    if (!button) {
      return;
    }
    if (button.dataset.mode === "semantic") {
      void applyView({ mode: "semantic" });
    } else {
      void applyView({ mode: "classical", engine: button.dataset.engine ?? "" });
    }
  });

  el.conceptTree.addEventListener("click", (event) => {
    const button = (event.target as Element).closest<HTMLElement>("button[data-term]");
    if (!button) {
      return;
    }
    const term = button.dataset.term ?? "";
    selectTerm(term === state.selectedTerm ? null : term);
  });

  const ready = fetchHealth(base)
    .then((health) => {
      el.engines.innerHTML = buildEngineChoices(health.engines);
    })
    .catch(() => {
      // The form still works without choices; the server decides the engines.
    });

  return { ready, state, submitQuery, applyView };
}
