/** Payload shapes served by the semrank JSON API. */

export interface TermExpansion {
  term: string;
  synonyms: string[];
  hypernyms: string[];
}

export interface SemanticVector {
  entries: TermExpansion[];
}

/** Per-axis evidence behind a document weight; all raw term frequencies. */
export interface AxisContrib {
  term_tf: number;
  synonym_tf_sum: number;
  hypernym_tf_sum: number;
}

export interface RankedResult {
  engine: string;
  classical_rank: number;
  title: string;
  abstract: string;
  url: string;
  distance: number;
  rsv: number;
  flags: string[];
  contrib: AxisContrib[];
  semantic_rank: number;
}

export interface EngineScore {
  engine: string;
  score: number;
  footrule: number;
  footrule_max: number;
}

export interface CriteriaCounts {
  dead_links: number;
  redundant: number;
  parasites: number;
}

export interface UnavailableEngine {
  engine: string;
  reason: string;
}

export interface Session {
  session_id: string;
  query: string;
  created_at: string;
  semantic_vector: SemanticVector;
  engines_used: string[];
  engines_unavailable: UnavailableEngine[];
  results: RankedResult[];
  classical_views: Record<string, string[]>;
  engine_scores: EngineScore[];
  criteria: Record<string, CriteriaCounts>;
  config_snapshot: Record<string, unknown>;
}

/** One of the two orders a stored session can be projected into. */
export interface RankingView {
  session_id: string;
  mode: string;
  engine: string | null;
  results: RankedResult[];
}

export interface Health {
  status: string;
  engines: string[];
  synsets: number;
}

export interface SearchParams {
  query: string;
  engines?: string[];
  top_n?: number;
  alpha?: number;
  beta?: number;
  query_weighting?: string;
}
