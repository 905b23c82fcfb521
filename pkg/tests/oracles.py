"""Slow, obviously-correct reference implementations used to check the library."""

from __future__ import annotations

from collections import Counter

import numpy as np


def naive_parikh_set(s: str, n: int, alphabet: str) -> set[tuple[int, ...]]:
    out = set()
    for i in range(len(s) - n + 1):
        c = Counter(s[i : i + n])
        out.add(tuple(c[a] for a in alphabet))
    return out


def naive_abelian(s: str, n: int, alphabet: str) -> int:
    return len(naive_parikh_set(s, n, alphabet))


def naive_subword(s: str, n: int) -> int:
    return len({s[i : i + n] for i in range(len(s) - n + 1)})


def naive_deviation(s: str, n: int, letter: str) -> int:
    counts = [s[i : i + n].count(letter) for i in range(len(s) - n + 1)]
    return max(counts) - min(counts)


def sliding_abelian_counts(s: str, n_max: int, alphabet: str) -> list[int]:
    """Abelian complexity for every n <= n_max by an incremental per-window scan."""
    index = {a: i for i, a in enumerate(alphabet)}
    seq = [index[ch] for ch in s]
    d = len(alphabet)
    out = []
    for n in range(1, n_max + 1):
        c = [0] * d
        for x in seq[:n]:
            c[x] += 1
        seen = {tuple(c)}
        for i in range(n, len(seq)):
            c[seq[i]] += 1
            c[seq[i - n]] -= 1
            seen.add(tuple(c))
        out.append(len(seen))
    return out


def sliding_max_deviation(s: str, n_max: int, alphabet: str) -> int:
    index = {a: i for i, a in enumerate(alphabet)}
    seq = np.array([index[ch] for ch in s])
    worst = 0
    for a in range(len(alphabet)):
        ps = np.concatenate([[0], np.cumsum(seq == a)])
        for n in range(1, n_max + 1):
            win = ps[n:] - ps[:-n]
            worst = max(worst, int(win.max() - win.min()))
    return worst


def all_ternary_words(k: int) -> np.ndarray:
    """Every word of length k over {0,1,2}, in lexicographic order, one per row."""
    idx = np.arange(3**k, dtype=np.int64)
    digits = np.empty((3**k, k), dtype=np.int8)
    for j in range(k - 1, -1, -1):
        digits[:, j] = idx % 3
        idx //= 3
    return digits


def brute_force_survivors(k: int, rho_bound: int) -> np.ndarray:
    """Rows of ``all_ternary_words(k)`` whose abelian complexity is <= rho_bound at every n."""
    words = all_ternary_words(k)
    onehot = np.stack([(words == a) for a in range(3)], axis=2).astype(np.int16)
    ps = np.concatenate([np.zeros((words.shape[0], 1, 3), np.int16), np.cumsum(onehot, axis=1)], axis=1)
    ok = np.ones(words.shape[0], dtype=bool)
    for n in range(1, k + 1):
        win = ps[:, n:, :] - ps[:, :-n, :]
        keys = np.sort(win[:, :, 0] * (n + 1) + win[:, :, 1], axis=1)
        distinct = 1 + (np.diff(keys, axis=1) != 0).sum(axis=1)
        ok &= distinct <= rho_bound
    return words[ok]
