/* tslint:disable */
/* eslint-disable */

/**
 * Coefficients of `x^i y^j` in the two-variable polylogarithm, `i + j ≤ cap`;
 * row `i` lists `j = 0..=cap-i`.
 */
export function li2_grid(a: string, b: string, cap: number): string;

/**
 * Floating partial sum of a multiple zeta value with its error bound.
 */
export function mzv_partial_sum(index: string, n: number): string;

/**
 * Stuffle and shuffle expansions of `a · b`, and their difference when
 * both indices are admissible.
 */
export function product_expansion(a: string, b: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly li2_grid: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly mzv_partial_sum: (a: number, b: number, c: number) => [number, number];
    readonly product_expansion: (a: number, b: number, c: number, d: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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
