/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const census_summary: () => [number, number];
export const classify_gluing: (a: number, b: number) => [number, number];
export const raw_gluing: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
