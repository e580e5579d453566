/** Wire types for the mapper-stitch HTTP contract (schema version 1.0). */

export type Measure = "lhd0" | "lhd1" | "lrec" | "led_d" | "led_a";
export type Restriction = "interior" | "boundary";
export type ColorMode = "interval" | "measure";

export interface GraphNodeDoc {
  id: number;
  interval: number;
  size: number;
  members?: number[];
}

export interface GraphDoc {
  nodes: GraphNodeDoc[];
  edges: [number, number][];
  simplices: number[][];
}

export interface CellDoc {
  row: number;
  col: number;
  graph: GraphDoc;
  vectors: {
    base: number[] | null;
    stitched: number[] | null;
    diff: number[] | null;
  };
  global: {
    base: number | null;
    stitched: number | null;
    diff: number | null;
  };
  trace?: unknown;
}

export interface MatrixSpecBody {
  dataset: string;
  variables: string[];
  intervals: number | number[];
  overlap: number;
  epsilon?: number | null;
  measure: Measure;
  restriction: Restriction;
  max_dim?: number;
  seed?: number;
  n_points?: number;
}

export interface MatrixResultDoc {
  version: string;
  spec: { variables: string[]; measure: string; [key: string]: unknown };
  cells: CellDoc[];
}

export interface DatasetInfo {
  name: string;
  kind: "csv" | "shape";
  variables: string[];
}

export interface SampleDoc {
  dataset: string;
  variables: string[];
  values: Record<string, number[]>;
}

export interface ParamForm {
  intervals: number;
  overlap: number;
  epsilon: number | null;
  measure: Measure;
  restriction: Restriction;
  maxDim: number;
}

export interface ViewState {
  dataset: string;
  variables: string[];
  form: ParamForm;
  colorMode: ColorMode;
  result: MatrixResultDoc | null;
}

export interface MatrixApi {
  datasets(): Promise<DatasetInfo[]>;
  postMatrix(spec: MatrixSpecBody): Promise<MatrixResultDoc>;
  sample(dataset: string, variables: string[]): Promise<SampleDoc>;
}
