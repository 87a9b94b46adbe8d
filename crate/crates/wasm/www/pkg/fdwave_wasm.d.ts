/* tslint:disable */
/* eslint-disable */

export class Coefficients {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Grünwald weights `g_k^{(γ)}`.
     */
    g(): Float64Array;
    /**
     * Centred-difference weights `ĝ_k^{(β)}`.
     */
    g_hat(): Float64Array;
    /**
     * Shifted Grünwald weights `λ_k^{(γ)}`.
     */
    lambda(): Float64Array;
    /**
     * Lag weights `μ_k` for the weight `Γ(5 - α)`, quadrature `J` and step `τ`.
     */
    mu(): Float64Array;
}

export class Solution1D {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    exact(): Float64Array;
    /**
     * Iterations of every time step.
     */
    iterations(): Float64Array;
    /**
     * Computed values at the final time, boundary zeros included.
     */
    numeric(): Float64Array;
    /**
     * Grid including both boundary nodes.
     */
    x(): Float64Array;
    readonly avg_iters: number;
    /**
     * Max-norm error over all time levels.
     */
    readonly max_error: number;
    /**
     * Iterations of the one-time GSF setup solve, or -1.
     */
    readonly setup_iters: number;
}

export class Spectrum {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Ascending eigenvalues of the scheme matrix.
     */
    original(): Float64Array;
    /**
     * Ascending eigenvalues of `P⁻¹A`; empty without a preconditioner.
     */
    preconditioned(): Float64Array;
    /**
     * Lower bound for the R. Chan-preconditioned eigenvalues.
     */
    readonly lower_bound: number;
}

/**
 * The first `count + 1` terms of each coefficient sequence.
 */
export function coefficients(beta: number, gamma: number, j: number, tau: number, count: number): Coefficients;

/**
 * Marches the 1D manufactured problem on `[0, 1]`.
 */
export function solve_1d(m: number, n: number, j: number, t_final: number, beta: number, method: string): Solution1D;

/**
 * Eigenvalues of the 1D scheme matrix; `precond` is `rchan`, `strang` or
 * `none`.
 */
export function spectrum(m: number, n: number, j: number, t_final: number, beta: number, precond: string): Spectrum;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_coefficients_free: (a: number, b: number) => void;
    readonly __wbg_solution1d_free: (a: number, b: number) => void;
    readonly __wbg_spectrum_free: (a: number, b: number) => void;
    readonly coefficients: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly coefficients_g: (a: number) => [number, number];
    readonly coefficients_g_hat: (a: number) => [number, number];
    readonly coefficients_lambda: (a: number) => [number, number];
    readonly coefficients_mu: (a: number) => [number, number];
    readonly solution1d_avg_iters: (a: number) => number;
    readonly solution1d_exact: (a: number) => [number, number];
    readonly solution1d_iterations: (a: number) => [number, number];
    readonly solution1d_max_error: (a: number) => number;
    readonly solution1d_numeric: (a: number) => [number, number];
    readonly solution1d_setup_iters: (a: number) => number;
    readonly solution1d_x: (a: number) => [number, number];
    readonly solve_1d: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly spectrum: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly spectrum_lower_bound: (a: number) => number;
    readonly spectrum_original: (a: number) => [number, number];
    readonly spectrum_preconditioned: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
