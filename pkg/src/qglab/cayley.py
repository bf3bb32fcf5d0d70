"""Finite balls of Cayley graphs: certified distances, geodesics, export.

Vertex numbering is deterministic: breadth-first order with letters tried in
alphabet order within each frontier, so every report built on a ball is
byte-for-byte reproducible.
"""

from __future__ import annotations

import json
import os
import re
from collections import deque
from dataclasses import dataclass, field

from .errors import ConfigurationError, DistanceNotCertifiedError, ResourceBudgetError
from .groups import GroupModel, Word, make_model

BALL_FORMAT = "qglab-ball/1"


@dataclass
class Ball:
    """Exact ball of radius ``radius`` around the identity.

    ``adjacency[v][li]`` is the neighbour index reached from vertex v by
    letter li, or None when that neighbour lies outside the ball.
    ``complete`` is set when the whole group fit inside the radius, in which
    case every distance in the ball is exact with no certification condition.
    """

    model: GroupModel
    radius: int
    elems: list
    index: dict
    dist: list[int]
    adjacency: list[tuple[int | None, ...]]
    complete: bool = False
    truncated_letters: int = field(default=0, repr=False)

    def __len__(self) -> int:
        return len(self.elems)

    def vertex_word(self, v: int) -> Word:
        return self.model.elem_word(self.elems[v])

    def sphere_sizes(self) -> list[int]:
        out = [0] * (self.radius + 1)
        for d in self.dist:
            out[d] += 1
        return out

    def certified_pair(self, u: int, v: int) -> bool:
        """True when every geodesic between u and v provably stays inside.

        Uses 2*min(|u|,|v|) + max(|u|,|v|) <= radius; any point m on a u-v
        geodesic satisfies d(e,m) <= |u| + |v|, which this bound dominates.
        """
        if self.complete:
            return True
        du, dv = self.dist[u], self.dist[v]
        return 2 * min(du, dv) + max(du, dv) <= self.radius


def build_ball(model: GroupModel, radius: int, max_vertices: int = 1_000_000) -> Ball:
    """Breadth-first exact ball with deterministic numbering."""
    if radius < 0:
        raise ConfigurationError("ball radius must be >= 0")
    identity = model.identity()
    elems = [identity]
    index = {identity: 0}
    dist = [0]
    adjacency: list[tuple[int | None, ...]] = []
    nletters = model.alphabet.size
    left_out = 0
    cursor = 0
    while cursor < len(elems):
        e = elems[cursor]
        d = dist[cursor]
        row: list[int | None] = []
        for li in range(nletters):
            nxt = model.step(e, li)
            at = index.get(nxt)
            if at is None:
                if d < radius:
                    at = len(elems)
                    if at >= max_vertices:
                        raise ResourceBudgetError(
                            f"ball of radius {radius} for {model.spec_string()} "
                            f"exceeds the vertex budget {max_vertices}")
                    index[nxt] = at
                    elems.append(nxt)
                    dist.append(d + 1)
                else:
                    left_out += 1
            row.append(at)
        adjacency.append(tuple(row))
        cursor += 1
    return Ball(model=model, radius=radius, elems=elems, index=index, dist=dist,
                adjacency=adjacency, complete=left_out == 0,
                truncated_letters=left_out)


def ball_distance(ball: Ball, u: int, v: int) -> int:
    """Exact graph distance between two certified vertices of the ball."""
    n = len(ball.elems)
    if not (0 <= u < n and 0 <= v < n):
        raise ConfigurationError(f"vertex pair ({u},{v}) out of range for ball of size {n}")
    if not ball.certified_pair(u, v):
        raise DistanceNotCertifiedError(
            f"distance not certified for vertices {u},{v}: need "
            f"2*min+max <= {ball.radius} over origin distances "
            f"({ball.dist[u]},{ball.dist[v]})")
    if u == v:
        return 0
    seen = [False] * n
    seen[u] = True
    frontier = deque([(u, 0)])
    while frontier:
        x, d = frontier.popleft()
        for y in ball.adjacency[x]:
            if y is None or seen[y]:
                continue
            if y == v:
                return d + 1
            seen[y] = True
            frontier.append((y, d + 1))
    raise DistanceNotCertifiedError(
        f"vertices {u},{v} are disconnected inside the ball; radius too small")


def enumerate_geodesics(model: GroupModel, target: Word,
                        limit: int = 1000) -> tuple[list[Word], bool]:
    """All geodesic words from the identity to the element of ``target``.

    Returned in lexicographic letter order, truncated at ``limit`` with an
    explicit flag.  Distances go through the model oracle, so uncertified
    metrics propagate their error.
    """
    if limit < 1:
        raise ConfigurationError("limit must be >= 1")
    goal = model.eval_word(target)
    total = model.metric(goal)
    out: list[Word] = []
    truncated = False
    nletters = model.alphabet.size
    path: list[int] = []

    def descend(e, remaining: int) -> bool:
        nonlocal truncated
        if remaining == 0:
            out.append(Word(model.alphabet, tuple(path)))
            if len(out) >= limit:
                truncated = True
                return False
            return True
        for li in range(nletters):
            nxt = model.step(e, li)
            if model.pair_distance(nxt, goal) == remaining - 1:
                path.append(li)
                keep = descend(nxt, remaining - 1)
                path.pop()
                if not keep:
                    return False
        return True

    descend(model.identity(), total)
    return out, truncated


def export_dot(ball: Ball) -> str:
    """Deterministic DOT text: canonical-form labels, letter-labelled edges."""
    letters = ball.model.alphabet.letters
    lines = ["graph cayley_ball {"]
    for v in range(len(ball.elems)):
        label = ball.vertex_word(v).text or "1"
        lines.append(f'  v{v} [label="{label}"];')
    for v in range(len(ball.elems)):
        for li, u in enumerate(ball.adjacency[v]):
            if u is None:
                continue
            if v <= u:
                lines.append(f'  v{v} -- v{u} [label="{letters[li]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- ball cache ---------------------------------------------------------------

CACHE_ENV_VAR = "QGLAB_CACHE_DIR"


def ball_to_json(ball: Ball) -> dict:
    return {
        "format": BALL_FORMAT,
        "model": ball.model.spec_string(),
        "radius": ball.radius,
        "complete": ball.complete,
        "vertex_words": [ball.vertex_word(v).text for v in range(len(ball.elems))],
        "dist": list(ball.dist),
        "adjacency": [list(row) for row in ball.adjacency],
    }


def ball_from_json(data: dict, model: GroupModel | None = None) -> Ball:
    if data.get("format") != BALL_FORMAT:
        raise ConfigurationError(f"not a ball file (format={data.get('format')!r})")
    if model is None:
        model = make_model(data["model"])
    elif model.spec_string() != data["model"]:
        raise ConfigurationError(
            f"ball file is for {data['model']!r}, not {model.spec_string()!r}")
    elems = [model.eval_word(model.alphabet.word(text)) for text in data["vertex_words"]]
    return Ball(
        model=model,
        radius=int(data["radius"]),
        elems=elems,
        index={e: i for i, e in enumerate(elems)},
        dist=[int(d) for d in data["dist"]],
        adjacency=[tuple(None if x is None else int(x) for x in row)
                   for row in data["adjacency"]],
        complete=bool(data["complete"]),
    )


def save_ball(ball: Ball, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(ball_to_json(ball), fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_ball(path: str, model: GroupModel | None = None) -> Ball:
    with open(path, "r", encoding="utf-8") as fh:
        return ball_from_json(json.load(fh), model)


def cache_path(cache_dir: str, spec: str, radius: int) -> str:
    safe = re.sub(r"[^A-Za-z0-9]+", "-", spec).strip("-")
    return os.path.join(cache_dir, f"ball-{safe}-r{radius}.json")


def cached_build_ball(model: GroupModel, radius: int,
                      cache_dir: str | None = None,
                      max_vertices: int = 1_000_000) -> Ball:
    """build_ball with a JSON file cache keyed by (model spec, radius)."""
    if cache_dir is None:
        cache_dir = os.environ.get(CACHE_ENV_VAR)
    if not cache_dir:
        return build_ball(model, radius, max_vertices)
    path = cache_path(cache_dir, model.spec_string(), radius)
    if os.path.exists(path):
        return load_ball(path, model)
    ball = build_ball(model, radius, max_vertices)
    os.makedirs(cache_dir, exist_ok=True)
    save_ball(ball, path)
    return ball
