/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const generate_items: (a: number, b: number, c: number) => [number, number, number, number];
export const solve_items: (a: number, b: number, c: number) => [number, number, number, number];
export const tail_curve: (a: number) => [number, number, number, number];
export const value_curves: (a: number, b: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
