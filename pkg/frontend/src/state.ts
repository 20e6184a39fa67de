/** Client view state and the pure helpers that derive everything from it.
 *
 * The browser never computes a score: every number shown on the page is a
 * field of the stored session, and these helpers only select and reorder.
 */

import type { Session } from "./types.js";

export type RankingMode =
  | { mode: "semantic" }
  | { mode: "classical"; engine: string };

export interface UiState {
  base: string;
  session: Session | null;
  ranking: RankingMode;
  selectedTerm: string | null;
}

export function initialState(base: string): UiState {
  return { base, session: null, ranking: { mode: "semantic" }, selectedTerm: null };
}

/** Index of a query term's axis in the semantic vector, or -1. */
export function axisIndex(session: Session, term: string): number {
  return session.semantic_vector.entries.findIndex((entry) => entry.term === term);
}

/** Urls of the results with any nonzero contribution on the term's axis. */
export function highlightedUrls(session: Session, term: string | null): Set<string> {
  const marked = new Set<string>();
  if (term === null) {
    return marked;
  }
  const axis = axisIndex(session, term);
  if (axis < 0) {
    return marked;
  }
  for (const result of session.results) {
    const contrib = result.contrib[axis];
    if (!contrib) {
      continue;
    }
    if (contrib.term_tf > 0 || contrib.synonym_tf_sum > 0 || contrib.hypernym_tf_sum > 0) {
      marked.add(result.url);
    }
  }
  return marked;
}
