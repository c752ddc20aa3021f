/* tslint:disable */
/* eslint-disable */

/**
 * The image of ρ for a planar fixture: `{"svg", "text"}`.
 */
export function boundary_image(name: string): string;

/**
 * `ρ(ξ)` for an exact direction such as `1,0` or `√3/2,-1/2`.
 */
export function classify(name: string, direction: string): string;

/**
 * The dual cube complex of a poc-set given in the file format:
 * `{"svg", "text"}`.
 */
export function cubing_from_pocset(pocset_json: string): string;

/**
 * Shadow report of the FIX-HEX tuple `(r, s, t)`: `{"svg", "text"}`.
 */
export function hex_shadow(r: number, s: number, t: number, window: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly boundary_image: (a: number, b: number) => [number, number, number, number];
    readonly classify: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly cubing_from_pocset: (a: number, b: number) => [number, number, number, number];
    readonly hex_shadow: (a: number, b: number, c: number, d: number) => [number, number, number, number];
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
