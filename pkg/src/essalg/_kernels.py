"""Hot search kernels with two interchangeable backends.

Backend selection via the ESSALG_BACKEND environment variable:
  auto   - numba if importable, else pure python/numpy (default)
  numba  - require numba, raise if missing
  python - force the pure python/numpy implementations

Both backends are exercised by the test suite and must agree bit-for-bit.
"""

from __future__ import annotations

import os

import numpy as np


def backend_name() -> str:
    choice = os.environ.get("ESSALG_BACKEND", "auto")
    if choice not in ("auto", "numba", "python"):
        raise ValueError(f"ESSALG_BACKEND must be auto|numba|python, got {choice!r}")
    if choice == "python":
        return "python"
    try:
        import numba  # noqa: F401
        return "numba"
    except ImportError:
        if choice == "numba":
            raise
        return "python"


# ---------------------------------------------------------------------------
# invariant-mask filtering
#
# Relations of arity m over a domain of size d are subsets of the T = d^m
# tuple codes, stored as T-bit masks.  A generator of arity k acts on tuple
# codes columnwise; imgs[c] is the image code of the combo c (mixed radix,
# base T, k digits).  A mask is invariant iff every combo of member codes has
# its image code in the mask.


def _filter_masks_python(T: int, gens: list) -> np.ndarray:
    n_masks = 1 << T
    bits = ((np.arange(n_masks, dtype=np.uint32)[:, None]
             >> np.arange(T, dtype=np.uint32)) & 1).astype(bool)
    ok = np.ones(n_masks, dtype=bool)
    for k, imgs in gens:
        for c in range(T ** k):
            cc = c
            cond = None
            for _ in range(k):
                col = bits[:, cc % T]
                cond = col if cond is None else (cond & col)
                cc //= T
            if k == 0:
                cond = np.ones(n_masks, dtype=bool)
            bad = cond & ~bits[:, imgs[c]]
            ok &= ~bad
    return np.nonzero(ok)[0].astype(np.int64)


_NUMBA_FILTER = None


def _numba_filter():
    global _NUMBA_FILTER
    if _NUMBA_FILTER is None:
        from numba import njit

        @njit(cache=True)
        def kern(T, ks, offsets, imgs_flat):  # pragma: no cover - jitted
            n_masks = 1 << T
            out = np.zeros(n_masks, dtype=np.uint8)
            n_gens = ks.shape[0]
            for mask in range(n_masks):
                good = True
                for g in range(n_gens):
                    k = ks[g]
                    base = offsets[g]
                    n_combo = 1
                    for _ in range(k):
                        n_combo *= T
                    for c in range(n_combo):
                        cc = c
                        all_in = True
                        for _ in range(k):
                            if (mask >> (cc % T)) & 1 == 0:
                                all_in = False
                                break
                            cc //= T
                        if all_in:
                            img = imgs_flat[base + c]
                            if (mask >> img) & 1 == 0:
                                good = False
                                break
                    if not good:
                        break
                if good:
                    out[mask] = 1
            return out

        _NUMBA_FILTER = kern
    return _NUMBA_FILTER


def filter_invariant_masks(T: int, gens: list) -> list:
    """All T-bit masks closed under every generator, ascending.

    gens: list of (arity k, imgs) with imgs a sequence of length T**k.
    """
    if T > 16:
        raise ValueError(f"mask filtering supports T <= 16 codes, got {T}")
    gens = [(int(k), np.asarray(imgs, dtype=np.int64)) for k, imgs in gens]
    if backend_name() == "numba":
        ks = np.array([k for k, _ in gens], dtype=np.int64)
        offsets = np.zeros(len(gens), dtype=np.int64)
        pos = 0
        chunks = []
        for idx, (k, imgs) in enumerate(gens):
            offsets[idx] = pos
            chunks.append(imgs)
            pos += len(imgs)
        imgs_flat = (np.concatenate(chunks) if chunks
                     else np.zeros(0, dtype=np.int64))
        flags = _numba_filter()(T, ks, offsets, imgs_flat)
        return [m for m in range(1 << T) if flags[m]]
    return [int(m) for m in _filter_masks_python(T, gens)]


# ---------------------------------------------------------------------------
# idempotent witness search
#
# Search for a dependency-structured unary e with e(x) in A for every x and
# e(a) = a componentwise for every a in A (equivalent to: e idempotent with
# image exactly A).  Table slots are flattened; comp_key[i, x] is the slot of
# component i's table used when evaluating e(x), comp_val[i, x] is component i
# of x.  Backtracking with per-element extendability pruning; slots tried in
# ascending order, values ascending, so the witness found is canonical.


def _idem_search_python(n, d, q, comp_key, comp_val, offsets, n_slots, in_a):
    val = np.full(n_slots, -1, dtype=np.int64)
    a_list = [x for x in range(d) if in_a[x]]
    # forced entries: e fixes A pointwise
    for a in a_list:
        for i in range(n):
            s = offsets[i] + comp_key[i, a]
            v = comp_val[i, a]
            if val[s] == -1:
                val[s] = v
            elif val[s] != v:
                return None

    def feasible() -> bool:
        for x in range(d):
            found = False
            for a in a_list:
                ok = True
                for i in range(n):
                    v = val[offsets[i] + comp_key[i, x]]
                    if v != -1 and v != comp_val[i, a]:
                        ok = False
                        break
                if ok:
                    found = True
                    break
            if not found:
                return False
        return True

    if not feasible():
        return None
    free = [s for s in range(n_slots) if val[s] == -1]

    def dfs(idx: int) -> bool:
        if idx == len(free):
            return True
        s = free[idx]
        for v in range(q):
            val[s] = v
            if feasible() and dfs(idx + 1):
                return True
        val[s] = -1
        return False

    if not dfs(0):
        return None
    return [_assemble(n, q, comp_key, offsets, val, x) for x in range(d)]


def _assemble(n, q, comp_key, offsets, val, x):
    y = 0
    mult = 1
    for i in range(n):
        y += int(val[offsets[i] + comp_key[i, x]]) * mult
        mult *= q
    return y


_NUMBA_IDEM = None


def _numba_idem():
    global _NUMBA_IDEM
    if _NUMBA_IDEM is None:
        from numba import njit

        @njit(cache=True)
        def kern(n, d, q, comp_key, comp_val, offsets, n_slots, in_a):  # pragma: no cover
            val = np.full(n_slots, -1, dtype=np.int64)
            for a in range(d):
                if not in_a[a]:
                    continue
                for i in range(n):
                    s = offsets[i] + comp_key[i, a]
                    v = comp_val[i, a]
                    if val[s] == -1:
                        val[s] = v
                    elif val[s] != v:
                        return np.full(1, -1, dtype=np.int64)

            # feasibility check for every domain element
            def feasible():
                for x in range(d):
                    found = False
                    for a in range(d):
                        if not in_a[a]:
                            continue
                        ok = True
                        for i in range(n):
                            v = val[offsets[i] + comp_key[i, x]]
                            if v != -1 and v != comp_val[i, a]:
                                ok = False
                                break
                        if ok:
                            found = True
                            break
                    if not found:
                        return False
                return True

            if not feasible():
                return np.full(1, -1, dtype=np.int64)

            n_free = 0
            free = np.zeros(n_slots, dtype=np.int64)
            for s in range(n_slots):
                if val[s] == -1:
                    free[n_free] = s
                    n_free += 1

            # iterative DFS: cur[idx] = value currently tried at free[idx]
            cur = np.zeros(max(n_free, 1), dtype=np.int64)
            idx = 0
            while idx < n_free:
                if cur[idx] >= q:
                    # exhausted this slot: unwind one level
                    val[free[idx]] = -1
                    cur[idx] = 0
                    idx -= 1
                    if idx < 0:
                        return np.full(1, -1, dtype=np.int64)
                    val[free[idx]] = -1
                    cur[idx] += 1
                    continue
                val[free[idx]] = cur[idx]
                if feasible():
                    idx += 1
                else:
                    val[free[idx]] = -1
                    cur[idx] += 1

            table = np.zeros(d, dtype=np.int64)
            for x in range(d):
                y = 0
                mult = 1
                for i in range(n):
                    y += val[offsets[i] + comp_key[i, x]] * mult
                    mult *= q
                table[x] = y
            return table

        _NUMBA_IDEM = kern
    return _NUMBA_IDEM


def idempotent_table_search(n: int, d: int, q: int, comp_key, comp_val,
                            offsets, n_slots: int, in_a) -> list:
    """Flat d-entry table of a canonical idempotent witness, or None."""
    comp_key = np.asarray(comp_key, dtype=np.int64).reshape(n, d)
    comp_val = np.asarray(comp_val, dtype=np.int64).reshape(n, d)
    offsets = np.asarray(offsets, dtype=np.int64)
    in_a = np.asarray(in_a, dtype=np.uint8)
    if backend_name() == "numba":
        out = _numba_idem()(n, d, q, comp_key, comp_val, offsets, n_slots, in_a)
        if out.shape[0] >= 1 and out[0] == -1:
            return None
        return [int(v) for v in out]
    return _idem_search_python(n, d, q, comp_key, comp_val, offsets,
                               n_slots, in_a)
