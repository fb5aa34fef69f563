/** Wire-format types for the backend JSON API. */

export type EntityKind = 'term' | 'article';

export interface SearchHit {
  id: number;
  kind: EntityKind;
  name: string;
  type: string | null;
  tier: number;
}

export interface SubgraphNode {
  id: number;
  kind: EntityKind;
  name: string;
  type: string | null;
}

export interface Provenance {
  pmid: string;
  sentence: number;
}

export interface SubgraphEdge {
  head: number;
  relation: string;
  tail: number;
  provenance: Provenance[];
}

export interface SubgraphPayload {
  center: number;
  nodes: SubgraphNode[];
  edges: SubgraphEdge[];
  truncated: boolean;
}

export interface Recommendation {
  id: number;
  kind: EntityKind;
  name: string;
  score: number;
}

export interface ArticleTerm {
  id: number;
  name: string;
  type: string | null;
}

export interface ArticleDetail {
  pmid: string;
  title: string;
  abstract: string;
  terms: ArticleTerm[];
}

export interface Health {
  status: string;
  n_terms: number;
  n_articles: number;
  n_triplets: number;
  embeddings_loaded: boolean;
}

export interface ApiErrorBody {
  http_status: number;
  code: string;
  message: string;
}
