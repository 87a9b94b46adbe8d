/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_coefficients_free: (a: number, b: number) => void;
export const __wbg_solution1d_free: (a: number, b: number) => void;
export const __wbg_spectrum_free: (a: number, b: number) => void;
export const coefficients: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const coefficients_g: (a: number) => [number, number];
export const coefficients_g_hat: (a: number) => [number, number];
export const coefficients_lambda: (a: number) => [number, number];
export const coefficients_mu: (a: number) => [number, number];
export const solution1d_avg_iters: (a: number) => number;
export const solution1d_exact: (a: number) => [number, number];
export const solution1d_iterations: (a: number) => [number, number];
export const solution1d_max_error: (a: number) => number;
export const solution1d_numeric: (a: number) => [number, number];
export const solution1d_setup_iters: (a: number) => number;
export const solution1d_x: (a: number) => [number, number];
export const solve_1d: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const spectrum: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const spectrum_lower_bound: (a: number) => number;
export const spectrum_original: (a: number) => [number, number];
export const spectrum_preconditioned: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
