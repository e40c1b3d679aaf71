/* tslint:disable */
/* eslint-disable */

/**
 * Result of an optimization run, exposed to JavaScript through getters.
 */
export class OptimizeRun {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly concurrence: Float64Array;
    readonly converged: boolean;
    readonly energyCost: number;
    readonly finalConcurrence: number;
    readonly iterations: number;
    readonly t: Float64Array;
    readonly u1: Float64Array;
    readonly u2: Float64Array;
}

export function freeEvolution(phi: string, chi: string, p: number, tau: number, n_steps: number): Float64Array;

export function optimizeControls(phi: string, chi: string, p: number, tau: number, alpha: number, n_steps: number, max_iterations: number): OptimizeRun;

export function referenceCurve(p0: number, tau: number, n_steps: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_optimizerun_free: (a: number, b: number) => void;
    readonly freeEvolution: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly optimizeControls: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number];
    readonly optimizerun_concurrence: (a: number) => [number, number];
    readonly optimizerun_converged: (a: number) => number;
    readonly optimizerun_energyCost: (a: number) => number;
    readonly optimizerun_finalConcurrence: (a: number) => number;
    readonly optimizerun_iterations: (a: number) => number;
    readonly optimizerun_t: (a: number) => [number, number];
    readonly optimizerun_u1: (a: number) => [number, number];
    readonly optimizerun_u2: (a: number) => [number, number];
    readonly referenceCurve: (a: number, b: number, c: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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
