"""Ground benchmark instances: graceful graphs and permutation pattern matching.

Each generator returns the program text and a correction spec (as a dict in
the ``.spec.json`` schema).  Output depends only on the arguments, so a
fixed seed reproduces the same bytes.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from pathlib import Path

from .errors import AspFixError


def _lines_to_text(header: list[str], sections: list[tuple[str, list[str]]]) -> str:
    out = [f"% {h}" for h in header]
    for title, lines in sections:
        out.append(f"% {title}")
        out.extend(lines)
    return "\n".join(out) + "\n"


def random_graph(vertices: int, edges: int, seed: int) -> list[tuple[int, int]]:
    pairs = list(itertools.combinations(range(1, vertices + 1), 2))
    if vertices < 2 or not 1 <= edges <= len(pairs):
        raise AspFixError(f"no simple graph with {vertices} vertices and {edges} edges")
    return sorted(random.Random(seed).sample(pairs, edges))


def gen_graceful(vertices: int, edges: int, seed: int) -> tuple[str, dict]:
    """Graceful labelling of a random simple graph; edge facts are removable.

    Vertex labels range over 0..|E| of the generated graph; removing edges
    keeps that range.
    """
    graph = random_graph(vertices, edges, seed)
    labels = range(edges + 1)
    vs = [f"v{i}" for i in range(1, vertices + 1)]
    es = [(f"v{a}", f"v{b}") for a, b in graph]
    diffs = [(i, j) for i in labels for j in labels if i != j]

    labelling = [f"1 {{ {'; '.join(f'lab({v},{i})' for i in labels)} }}." for v in vs]
    labelling += [f":- lab({v},{i}), lab({v},{j})." for v in vs for i, j in itertools.combinations(labels, 2)]
    labelling += [f":- lab({u},{i}), lab({w},{i})." for u, w in itertools.combinations(vs, 2) for i in labels]
    # relabelling i -> |E| - i preserves gracefulness of every subgraph
    symmetry = [f":- lab({vs[0]},{i})." for i in labels if 2 * i > edges]
    edge_labels = [f"elab({u},{w},{abs(i - j)}) :- edge({u},{w}), lab({u},{i}), lab({w},{j}), "
                   f"diff({i},{j},{abs(i - j)})." for u, w in es for i, j in diffs]
    edge_labels += [f":- elab({a},{b},{d}), elab({c},{e},{d})."
                    for (a, b), (c, e) in itertools.combinations(es, 2) for d in range(1, edges + 1)]
    text = _lines_to_text(
        [f"graceful graph: {vertices} vertices, {edges} edges, seed {seed}"],
        [("vertices", [f"vertex({v})." for v in vs]),
         ("edges (input)", [f"edge({u},{w})." for u, w in es]),
         ("label differences", [f"diff({i},{j},{abs(i - j)})." for i, j in diffs]),
         ("distinct vertex labels in 0..|E|", labelling),
         ("label complement symmetry", symmetry),
         ("distinct edge labels", edge_labels)])
    return text, {"removable": ["edge/2"], "addable_rules": [], "addition_exprs": []}


def order_isomorphic_embedding(text: list[int], pattern: list[int]) -> tuple[int, ...] | None:
    """Indices of a subsequence of ``text`` order-isomorphic to ``pattern`` (brute force)."""
    rank = sorted(range(len(pattern)), key=lambda i: pattern[i])
    for idx in itertools.combinations(range(len(text)), len(pattern)):
        sub = [text[j] for j in idx]
        if sorted(range(len(sub)), key=lambda i: sub[i]) == rank:
            return idx
    return None


def encode_patterns(text: list[int], pattern: list[int], min_len: int | None = None,
                    header: list[str] | None = None) -> tuple[str, dict]:
    """Ground encoding: is ``pattern`` order-isomorphic to a subsequence of ``text``?

    Pattern elements are ``pat(Position,Value)`` facts.  Corrections may
    remove them and add ``pat`` facts drawn from ``slot/2``; at least
    ``min_len`` positions must stay filled.
    """
    n, k = len(text), len(pattern)
    if k > n:
        raise AspFixError("pattern longer than text")
    if min_len is None:
        min_len = math.ceil(k / 2)
    if not 0 <= min_len <= k:
        raise AspFixError(f"minimum pattern length {min_len} outside 0..{k}")
    ps = range(1, k + 1)
    ts = range(1, n + 1)
    vals = range(1, k + 1)
    structure = [f"has({i}) :- pat({i},{v})." for i in ps for v in vals]
    structure += [f":- pat({i},{v}), pat({i},{w})." for i in ps for v, w in itertools.combinations(vals, 2)]
    structure += [f":- pat({i},{v}), pat({j},{v})." for i, j in itertools.combinations(ps, 2) for v in vals]
    structure += [f"less({i},{j}) :- pat({i},{v}), pat({j},{w})."
                  for i, j in itertools.combinations(ps, 2) for v in vals for w in vals if v < w]
    match = ["0 { " + "; ".join(f"m({i},{j})" for i in ps for j in ts) + " }."]
    match += [f"matched({i}) :- m({i},{j})." for i in ps for j in ts]
    match += [f":- has({i}), not matched({i})." for i in ps]
    match += [f":- m({i},{j}), not has({i})." for i in ps for j in ts]
    match += [f":- m({i},{j}), m({i},{h})." for i in ps for j, h in itertools.combinations(ts, 2)]
    match += [f":- m({i},{j}), m({i2},{j2})." for i, i2 in itertools.combinations(ps, 2)
              for j in ts for j2 in ts if j2 <= j]
    for i, i2 in itertools.combinations(ps, 2):
        for j, j2 in itertools.combinations(ts, 2):
            if text[j - 1] < text[j2 - 1]:
                match.append(f":- m({i},{j}), m({i2},{j2}), not less({i},{i2}).")
            else:
                match.append(f":- m({i},{j}), m({i2},{j2}), less({i},{i2}).")
    length = ["cnt(0,0)."]
    for i in ps:
        for c in range(min_len + 1):
            length.append(f"cnt({i},{c}) :- cnt({i - 1},{c}).")
            if c < min_len:
                length.append(f"cnt({i},{c + 1}) :- cnt({i - 1},{c}), has({i}).")
    length.append(f":- not cnt({k},{min_len}).")
    body = _lines_to_text(
        header or [f"permutation pattern matching: text {text}, pattern {pattern}"],
        [("text", [f"tval({j},{w})." for j, w in zip(ts, text)]),
         ("pattern (input)", [f"pat({i},{v})." for i, v in zip(ps, pattern)]),
         ("candidate pattern elements", [f"slot({i},{v})." for i in ps for v in vals]),
         ("pattern well-formedness", structure),
         ("order-isomorphic subsequence", match),
         (f"at least {min_len} pattern positions filled", length)])
    return body, {"removable": ["pat/2"], "addable_rules": [], "addition_exprs": ["pat(I,V):slot(I,V)"]}


def gen_patterns(text_len: int, pattern_len: int, seed: int, min_len: int | None = None) -> tuple[str, dict]:
    if not 1 <= pattern_len <= text_len:
        raise AspFixError("need 1 <= pattern length <= text length")
    rng = random.Random(seed)
    text = rng.sample(range(1, text_len + 1), text_len)
    pattern = rng.sample(range(1, pattern_len + 1), pattern_len)
    header = [f"permutation pattern matching: |T|={text_len}, |P|={pattern_len}, seed {seed}",
              f"T = {' '.join(map(str, text))}", f"P = {' '.join(map(str, pattern))}"]
    return encode_patterns(text, pattern, min_len, header)


def write_instance(out_dir, name: str, text: str, spec: dict) -> tuple[Path, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    lp = out_dir / f"{name}.lp"
    sj = out_dir / f"{name}.spec.json"
    lp.write_text(text, encoding="utf-8")
    sj.write_text(json.dumps(spec, indent=2) + "\n", encoding="utf-8")
    return lp, sj


def graceful_name(vertices: int, edges: int, seed: int) -> str:
    return f"graceful_{vertices}_{edges}_s{seed}"


def patterns_name(text_len: int, pattern_len: int, seed: int) -> str:
    return f"patterns_{text_len}_{pattern_len}_s{seed}"
