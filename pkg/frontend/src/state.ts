/** ViewState and the exploration loop.
 *
 * Every parameter change validates the form, issues exactly one matrix
 * request (superseding any in-flight one), and re-renders from the response.
 * Color-mode switches and history restores re-render the stored result
 * without a request. On failure the previous view is kept and an error
 * banner with a retry affordance is shown. All displayed numbers come from
 * the service payload untouched.
 */

import { renderErrorBanner, renderMatrix, renderScatterMatrix, type LayoutCache } from "./render.js";
import type {
  ColorMode,
  MatrixApi,
  MatrixSpecBody,
  ParamForm,
  SampleDoc,
  ViewState,
} from "./types.js";

export const MEASURES = ["lhd0", "lhd1", "lrec", "led_d", "led_a"] as const;
export const RESTRICTIONS = ["interior", "boundary"] as const;

export function defaultForm(): ParamForm {
  return {
    intervals: 10,
    overlap: 0.3,
    epsilon: null,
    measure: "led_a",
    restriction: "boundary",
    maxDim: 3,
  };
}

/** Reason the form is invalid, or null; checked before every request. */
export function validateForm(form: ParamForm): string | null {
  if (!Number.isInteger(form.intervals) || form.intervals < 1) {
    return "resolution must be a positive integer";
  }
  if (!(form.overlap >= 0 && form.overlap < 1)) {
    return "overlap out of range";
  }
  if (form.epsilon !== null && !(form.epsilon > 0)) {
    return "epsilon must be positive";
  }
  if (!MEASURES.includes(form.measure)) return "unknown measure";
  if (!RESTRICTIONS.includes(form.restriction)) return "unknown restriction";
  if (!Number.isInteger(form.maxDim) || form.maxDim < 1) {
    return "max_dim must be >= 1";
  }
  return null;
}

export function specFromState(state: ViewState): MatrixSpecBody {
  const body: MatrixSpecBody = {
    dataset: state.dataset,
    variables: [...state.variables],
    intervals: state.form.intervals,
    overlap: state.form.overlap,
    measure: state.form.measure,
    restriction: state.form.restriction,
    max_dim: state.form.maxDim,
  };
  if (state.form.epsilon !== null) body.epsilon = state.form.epsilon;
  return body;
}

export interface RenderSink {
  matrix(html: string, state: ViewState): void;
  scatter(html: string): void;
  banner(html: string | null): void;
}

export interface HistoryAdapter {
  push(state: ViewState): void;
}

export class ExplorerController {
  state: ViewState;
  private readonly layoutCache: LayoutCache = new Map();
  private requestSeq = 0;

  constructor(
    private readonly api: MatrixApi,
    private readonly sink: RenderSink,
    private readonly history?: HistoryAdapter,
  ) {
    this.state = {
      dataset: "",
      variables: [],
      form: defaultForm(),
      colorMode: "interval",
      result: null,
    };
  }

  /** Single entry point for any state change that needs fresh results. */
  private async request(next: ViewState): Promise<void> {
    const reason = validateForm(next.form);
    if (reason) {
      this.sink.banner(renderErrorBanner(reason));
      return;
    }
    const seq = ++this.requestSeq;
    try {
      const result = await this.api.postMatrix(specFromState(next));
      if (seq !== this.requestSeq) return; // superseded
      this.state = { ...next, result };
      this.sink.banner(null);
      this.sink.matrix(
        renderMatrix(result, this.state.colorMode, this.layoutCache),
        this.state);
      this.history?.push(this.state);
    } catch (err) {
      if (seq !== this.requestSeq) return; // stale failure, view moved on
      if ((err as Error | null)?.name === "AbortError") return;
      const message = err instanceof Error ? err.message : String(err);
      this.sink.banner(renderErrorBanner(message));
      // previous view (this.state.result) is intentionally retained
    }
  }

  async setDataset(dataset: string, variables: string[]): Promise<void> {
    await this.request({ ...this.state, dataset, variables });
    await this.refreshScatter();
  }

  async setVariables(variables: string[]): Promise<void> {
    await this.request({ ...this.state, variables });
    await this.refreshScatter();
  }

  async setParam(patch: Partial<ParamForm>): Promise<void> {
    await this.request({
      ...this.state,
      form: { ...this.state.form, ...patch },
    });
  }

  async retry(): Promise<void> {
    await this.request(this.state);
  }

  /** Color-mode switch re-renders the stored result; no request, and the
   * layout cache keeps node positions for unchanged graphs. */
  setColorMode(mode: ColorMode): void {
    this.state = { ...this.state, colorMode: mode };
    if (this.state.result) {
      this.sink.matrix(
        renderMatrix(this.state.result, mode, this.layoutCache), this.state);
    }
  }

  /** Restore a prior ViewState (browser back/forward); renders the stored
   * result without issuing a request. */
  restore(state: ViewState): void {
    this.state = state;
    this.sink.banner(null);
    if (state.result) {
      this.sink.matrix(
        renderMatrix(state.result, state.colorMode, this.layoutCache), state);
    }
  }

  private async refreshScatter(): Promise<void> {
    if (!this.state.dataset || this.state.variables.length === 0) return;
    try {
      const sample: SampleDoc = await this.api.sample(
        this.state.dataset, this.state.variables);
      this.sink.scatter(renderScatterMatrix(sample));
    } catch {
      this.sink.scatter("");
    }
  }
}
