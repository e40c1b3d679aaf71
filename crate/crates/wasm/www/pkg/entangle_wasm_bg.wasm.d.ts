/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_optimizerun_free: (a: number, b: number) => void;
export const freeEvolution: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
export const optimizeControls: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number];
export const optimizerun_concurrence: (a: number) => [number, number];
export const optimizerun_converged: (a: number) => number;
export const optimizerun_energyCost: (a: number) => number;
export const optimizerun_finalConcurrence: (a: number) => number;
export const optimizerun_iterations: (a: number) => number;
export const optimizerun_t: (a: number) => [number, number];
export const optimizerun_u1: (a: number) => [number, number];
export const optimizerun_u2: (a: number) => [number, number];
export const referenceCurve: (a: number, b: number, c: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
