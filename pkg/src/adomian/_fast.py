"""Vectorized convolution passes over packed monomial keys.

The pure-power Adomian grids are produced by repeated truncated convolution
of a component series with an accumulator grid. At the scales the package
must handle (order 100 at power 10 means ~1e9 monomial merges and ~7.6e7
surviving monomials) object-level polynomials are hopeless, so the fast path
works on flat numpy arrays and jit-compiled loops:

* A monomial of degree d inside grid cell k (where every monomial's indices
  sum to exactly k) is stored as its d-1 smallest indices, sorted ascending
  and bit-packed into one uint64 (``width`` bits per field). The largest
  index is implied: k minus the sum of the packed ones. In 2-D the parts are
  row-major flattened pairs and the implied largest is reconstructed
  componentwise from the cell's index pair.
* One convolution pass turns cell k of u^j into cell k of u^(j+1) by
  inserting index i = k - t into every monomial of source cell t, for all
  t <= k, and merging equal keys by summing coefficients.
* Merging is a bucket scatter on the top key bits followed by small
  open-addressing tables (cache-resident), with coefficients in int64.

Packing requires width * (power - 1) <= 63 and power <= 20 (coefficients are
bounded by power! which must fit int64); callers fall back to the generic
object fold otherwise.
"""

from __future__ import annotations

import numpy as np
from numba import get_parallel_chunksize, njit, prange, set_parallel_chunksize

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)

# Rows per chunk of cells processed in one kernel call; bounds transient
# memory (~48 bytes/row) while keeping several large cells per call so both
# threads stay busy.
_CHUNK_ROWS = 32_000_000


def packed_width_1d(order: int) -> int:
    return max(1, int(order - 1).bit_length())


def packed_width_2d(rows: int, cols: int) -> int:
    return max(1, int(rows * cols - 1).bit_length())


def can_pack(power: int, width: int) -> bool:
    """True when the packed fast path supports this power/width."""
    return 2 <= power <= 20 and width * (power - 1) <= 63


@njit(cache=True, parallel=True)
def _pass_chunk(
    acc_keys,
    acc_coeffs,
    acc_offs,  # flattened source cells (row-major in 2-D)
    cells,  # flat cell ids of this chunk, largest first
    soffs,  # scratch offsets per chunk cell, aligned with `cells`
    cols,  # 0 for 1-D, otherwise the column count of the 2-D grid
    width,
    nfields_in,
    scratch_k,
    scratch_c,
    scratch2_k,
    scratch2_c,
    out_keys,
    out_coeffs,
    out_counts,
):
    w = np.uint64(width)
    fmask = (np.uint64(1) << w) - np.uint64(1)
    nf = nfields_in
    top_bits = width * (nf + 1) - 11
    if top_bits < 0:
        top_bits = 0
    topshift = np.uint64(top_bits)
    for ci in prange(len(cells)):
        cell = cells[ci]
        base = soffs[ci]
        rows = soffs[ci + 1] - base
        if rows == 0:
            out_counts[ci] = 0
            continue
        # phase 1: insert the shift index into every source monomial
        pos = base
        if cols == 0:
            a_hi, b_hi = cell, 0
        else:
            a_hi, b_hi = cell // cols, cell % cols
        for sa in range(a_hi + 1):
            for sb in range(b_hi + 1):
                if cols == 0:
                    src = sa
                    ins = a_hi - sa
                else:
                    src = sa * cols + sb
                    ins = (a_hi - sa) * cols + (b_hi - sb)
                i64 = np.int64(ins)
                for r in range(acc_offs[src], acc_offs[src + 1]):
                    key = acc_keys[r]
                    if nf > 0 and i64 <= np.int64(key & fmask):
                        # new index is the smallest part: plain prepend
                        nk = (key << w) | np.uint64(ins)
                    else:
                        s_a = 0
                        s_b = 0
                        p = 0
                        for f in range(nf):
                            fv = np.int64((key >> (w * np.uint64(f))) & fmask)
                            if cols == 0:
                                s_a += fv
                            else:
                                s_a += fv // cols
                                s_b += fv % cols
                            if fv <= i64:
                                p += 1
                        if cols == 0:
                            big = sa - s_a
                        else:
                            big = (sa - s_a) * cols + (sb - s_b)
                        if i64 >= big:
                            nk = key | (np.uint64(big) << (w * np.uint64(nf)))
                        else:
                            low = (np.uint64(1) << (w * np.uint64(p))) - np.uint64(1)
                            nk = (
                                (key & low)
                                | (np.uint64(ins) << (w * np.uint64(p)))
                                | ((key >> (w * np.uint64(p))) << (w * np.uint64(p + 1)))
                            )
                    scratch_k[pos] = nk
                    scratch_c[pos] = acc_coeffs[r]
                    pos += 1
        nuniq = 0
        if rows <= 2048:
            # small cell: one table straight off the scratch rows
            cap = 16
            capbits = 4
            while cap < rows * 2:
                cap <<= 1
                capbits += 1
            shift_h = np.uint64(64 - capbits)
            capmask = np.int64(cap - 1)
            tab_k = np.empty(cap, dtype=np.uint64)
            tab_v = np.zeros(cap, dtype=np.int64)
            for r in range(base, base + rows):
                nk = scratch_k[r]
                h = np.int64((nk * _GOLDEN) >> shift_h)
                while True:
                    if tab_v[h] == 0:
                        tab_k[h] = nk
                        tab_v[h] = scratch_c[r]
                        scratch2_c[base + nuniq] = h
                        nuniq += 1
                        break
                    if tab_k[h] == nk:
                        tab_v[h] += scratch_c[r]
                        break
                    h = (h + 1) & capmask
            for u in range(nuniq):
                h = scratch2_c[base + u]
                out_keys[base + u] = tab_k[h]
                out_coeffs[base + u] = tab_v[h]
        else:
            # bucket rows by the top 11 key bits, then aggregate per bucket
            # in a table small enough to stay cache-resident
            counts = np.zeros(2049, dtype=np.int64)
            for r in range(base, base + rows):
                counts[np.int64(scratch_k[r] >> topshift) + 1] += 1
            maxb = 0
            for b in range(1, 2049):
                if counts[b] > maxb:
                    maxb = counts[b]
                counts[b] += counts[b - 1]
            heads = counts[:2048].copy()
            for r in range(base, base + rows):
                d = np.int64(scratch_k[r] >> topshift)
                dest = base + heads[d]
                heads[d] += 1
                scratch2_k[dest] = scratch_k[r]
                scratch2_c[dest] = scratch_c[r]
            cap = 16
            capbits = 4
            while cap < maxb * 2:
                cap <<= 1
                capbits += 1
            shift_h = np.uint64(64 - capbits)
            capmask = np.int64(cap - 1)
            tab_k = np.empty(cap, dtype=np.uint64)
            tab_v = np.zeros(cap, dtype=np.int64)
            stamp = np.full(cap, -1, dtype=np.int64)
            for b in range(2048):
                b0 = base + counts[b]
                b1 = base + counts[b + 1]
                nstart = nuniq
                for r in range(b0, b1):
                    nk = scratch2_k[r]
                    h = np.int64((nk * _GOLDEN) >> shift_h)
                    while True:
                        if stamp[h] != b:
                            stamp[h] = b
                            tab_k[h] = nk
                            tab_v[h] = scratch2_c[r]
                            scratch_c[base + nuniq] = h
                            nuniq += 1
                            break
                        if tab_k[h] == nk:
                            tab_v[h] += scratch2_c[r]
                            break
                        h = (h + 1) & capmask
                for u in range(nstart, nuniq):
                    h = scratch_c[base + u]
                    out_keys[base + u] = tab_k[h]
                    out_coeffs[base + u] = tab_v[h]
        out_counts[ci] = nuniq


def _run_fold(ncells: int, cols: int, width: int, power: int, cell_rows_of):
    """Drive power-1 convolution passes over packed cells.

    ``cell_rows_of(lens)`` maps a per-cell length array to the per-cell
    merge row counts (prefix sums along the grid axes).
    Returns (keys, coeffs, offs) with cells concatenated in flat order.
    """
    acc_keys = np.zeros(ncells, dtype=np.uint64)
    acc_coeffs = np.ones(ncells, dtype=np.int64)
    acc_offs = np.arange(ncells + 1, dtype=np.int64)
    old_chunk = get_parallel_chunksize()
    set_parallel_chunksize(1)
    try:
        for pass_index in range(1, power):
            lens = np.diff(acc_offs)
            rows_per_cell = cell_rows_of(lens)
            new_parts_k: list[np.ndarray] = []
            new_parts_c: list[np.ndarray] = []
            new_lens = np.empty(ncells, dtype=np.int64)
            start = 0
            while start < ncells:
                stop = start + 1
                rows_chunk = rows_per_cell[start]
                while stop < ncells and rows_chunk + rows_per_cell[stop] <= _CHUNK_ROWS:
                    rows_chunk += rows_per_cell[stop]
                    stop += 1
                chunk = np.arange(start, stop, dtype=np.int64)
                order = np.argsort(rows_per_cell[start:stop], kind="stable")[::-1]
                cells = chunk[order]
                soffs = np.zeros(len(cells) + 1, dtype=np.int64)
                np.cumsum(rows_per_cell[cells], out=soffs[1:])
                total = int(soffs[-1])
                scratch_k = np.empty(total, dtype=np.uint64)
                scratch_c = np.empty(total, dtype=np.int64)
                scratch2_k = np.empty(total, dtype=np.uint64)
                scratch2_c = np.empty(total, dtype=np.int64)
                out_k = np.empty(total, dtype=np.uint64)
                out_c = np.empty(total, dtype=np.int64)
                out_counts = np.zeros(len(cells), dtype=np.int64)
                _pass_chunk(
                    acc_keys, acc_coeffs, acc_offs,
                    cells, soffs, cols, width, pass_index - 1,
                    scratch_k, scratch_c, scratch2_k, scratch2_c,
                    out_k, out_c, out_counts,
                )
                # collect per-cell uniques back into flat-cell order
                per_cell = [None] * (stop - start)
                for j in range(len(cells)):
                    u = int(out_counts[j])
                    a = int(soffs[j])
                    per_cell[int(cells[j]) - start] = (
                        out_k[a : a + u].copy(),
                        out_c[a : a + u].copy(),
                    )
                for j, (pk, pc) in enumerate(per_cell):
                    new_parts_k.append(pk)
                    new_parts_c.append(pc)
                    new_lens[start + j] = len(pk)
                start = stop
            acc_keys = np.concatenate(new_parts_k) if new_parts_k else acc_keys
            acc_coeffs = np.concatenate(new_parts_c)
            acc_offs = np.concatenate(
                [np.zeros(1, dtype=np.int64), np.cumsum(new_lens)]
            )
    finally:
        set_parallel_chunksize(old_chunk)
    # canonical form: sort each cell by key
    for c in range(ncells):
        a, b = int(acc_offs[c]), int(acc_offs[c + 1])
        if b - a > 1:
            order = np.argsort(acc_keys[a:b], kind="stable")
            acc_keys[a:b] = acc_keys[a:b][order]
            acc_coeffs[a:b] = acc_coeffs[a:b][order]
    return acc_keys, acc_coeffs, acc_offs


def power_cells_1d(power: int, order: int):
    """Packed cells of the Adomian grid for u^power, orders 0..order-1.

    Returns (keys, coeffs, offs, width); cell k occupies
    keys[offs[k]:offs[k+1]], sorted ascending, coefficients int64.
    """
    width = packed_width_1d(order)
    if not can_pack(power, width):
        raise ValueError(f"cannot pack power={power}, order={order} into 64-bit keys")

    def rows_of(lens: np.ndarray) -> np.ndarray:
        return np.cumsum(lens)

    return (*_run_fold(order, 0, width, power, rows_of), width)


def power_cells_2d(power: int, rows: int, cols: int):
    """Packed cells for u^power on a rows x cols grid, row-major.

    Same layout as power_cells_1d with flat cell ids k*cols + l.
    """
    width = packed_width_2d(rows, cols)
    if not can_pack(power, width):
        raise ValueError(
            f"cannot pack power={power}, grid {rows}x{cols} into 64-bit keys"
        )

    def rows_of(lens: np.ndarray) -> np.ndarray:
        grid = lens.reshape(rows, cols)
        return np.cumsum(np.cumsum(grid, axis=0), axis=1).ravel()

    return (*_run_fold(rows * cols, cols, width, power, rows_of), width)


def decode_key(key: int, width: int, nfields: int) -> list[int]:
    """Unpack the explicitly stored (smallest) parts of a monomial key."""
    mask = (1 << width) - 1
    return [(key >> (width * f)) & mask for f in range(nfields)]
