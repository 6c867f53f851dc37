// Wire types for the engine's JSON documents. The dashboard never computes
// analytics itself: everything rendered comes straight from these fields.

export interface AxisRef {
  dimension: string;
  level: string;
}

export interface CellDoc {
  coordinates: string[];
  measures: Record<string, number>;
}

export interface CubeDoc {
  name: string;
  schema: AxisRef[];
  measures: string[];
  cells: CellDoc[];
}

export interface ComponentDoc {
  name: string;
  elements: (number | string)[];
  core_predicate: string;
  characterization?: Record<string, unknown>;
}

export interface ModelDoc {
  type: string;
  binding: Record<string, unknown>;
  characterization: Record<string, unknown>;
  components: ComponentDoc[];
}

export interface HighlightDoc {
  model: string;
  component: string;
  score: number | null;
  core_cell_coordinates: string[][];
  per_component_scores: Record<string, number | null>;
  per_model_scores: Record<string, number>;
}

export interface ScoredCell {
  coordinates: string[];
  value: number;
}

export interface EnhancedCubeDoc {
  cube: CubeDoc;
  models: ModelDoc[];
  highlight: HighlightDoc | null;
  provenance: Record<string, unknown>;
  scoring?: {
    significance_new: ScoredCell[];
    significance_old: ScoredCell[];
    surprise: ScoredCell[];
  };
}

export interface EngineError {
  stage: string;
  message: string;
  position?: number;
}
