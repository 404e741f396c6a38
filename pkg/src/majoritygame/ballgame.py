"""Ball-level question game over n balls coloured in two unseen colours.

Comparisons "are balls i and j the same colour?" build a union-find
structure with one parity bit per ball: balls in one component are on
the same side of its bipartition exactly when their parities agree.
The multiset of side-size differences is the weight-level position, and
answering a cross-component comparison realizes one Assigner choice on
it.  This module also hosts the identification rule, the exhaustive
colouring oracle it is checked against, adversarial answering, and
transcript import/export.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .core import (
    AssignerChoice,
    GameParams,
    Move,
    Position,
    is_final,
    minority_capacity,
)
from .solver import GameSolver, potential_guided_choice

#: Components beyond which the exhaustive colouring oracle refuses to run.
COLOURING_GUARD = 20

#: Largest n for which the exhaustive ball-level strategy search runs unforced.
BALL_SEARCH_GUARD_N = 8


class BallAnswer(Enum):
    SAME = "same"
    DIFFERENT = "different"


class InconsistentAnswerError(ValueError):
    """An answer contradicts what earlier answers already force."""


@dataclass(frozen=True)
class Component:
    """One component's bipartition, larger side first.

    For weight 0 the nominal larger side is the one holding the smallest
    ball, which keeps every downstream tie-break deterministic.
    """

    larger: tuple[int, ...]
    smaller: tuple[int, ...]

    @property
    def weight(self) -> int:
        return len(self.larger) - len(self.smaller)

    @property
    def min_ball(self) -> int:
        if self.smaller:
            return min(self.larger[0], self.smaller[0])
        return self.larger[0]

    @property
    def balls(self) -> tuple[int, ...]:
        return tuple(sorted(self.larger + self.smaller))


class QuestionGraph:
    """Union-find over balls 1..n with parity bits and a full history."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"need at least one ball, got n={n}")
        self._n = n
        self._parent = list(range(n + 1))  # index 0 unused
        self._rank = [0] * (n + 1)
        self._parity = [0] * (n + 1)  # side relative to the parent
        self.history: list[tuple[int, int, BallAnswer]] = []

    @property
    def n(self) -> int:
        return self._n

    def copy(self) -> "QuestionGraph":
        dup = QuestionGraph(self._n)
        dup._parent = self._parent[:]
        dup._rank = self._rank[:]
        dup._parity = self._parity[:]
        dup.history = self.history[:]
        return dup

    def _check_ball(self, ball: int) -> None:
        if not (1 <= ball <= self._n):
            raise ValueError(f"ball {ball} out of range 1..{self._n}")

    def find(self, ball: int) -> tuple[int, int]:
        """Root of the ball's component and the ball's side relative to it.

        Compresses paths; parities stay relative to the root, whose own
        parity is always 0.
        """
        self._check_ball(ball)
        path = []
        node = ball
        while self._parent[node] != node:
            path.append(node)
            node = self._parent[node]
        root = node
        for node in reversed(path):
            parent = self._parent[node]
            if parent != root:
                # parent sits nearer the root and was re-pointed already
                self._parity[node] ^= self._parity[parent]
                self._parent[node] = root
        return root, self._parity[ball] if ball != root else 0

    def forced_answer(self, i: int, j: int) -> BallAnswer | None:
        """The answer already implied for (i, j), or None across components."""
        if i == j:
            raise ValueError("cannot compare a ball with itself")
        ri, pi = self.find(i)
        rj, pj = self.find(j)
        if ri != rj:
            return None
        return BallAnswer.SAME if pi == pj else BallAnswer.DIFFERENT

    def add_comparison(self, i: int, j: int, answer: BallAnswer) -> None:
        """Record the answer to comparing balls i and j.

        Joins the two components under the implied parity constraint.
        When i and j are already connected the answer is checked against
        the forced one: a contradiction raises InconsistentAnswerError
        and a consistent repeat leaves the structure unchanged (the
        record still enters the history).
        """
        if not isinstance(answer, BallAnswer):
            raise ValueError(f"answer must be a BallAnswer, got {answer!r}")
        forced = self.forced_answer(i, j)
        if forced is not None:
            if forced != answer:
                raise InconsistentAnswerError(
                    f"balls {i} and {j} are already forced to answer {forced.value}")
            self.history.append((i, j, answer))
            return
        ri, pi = self.find(i)
        rj, pj = self.find(j)
        rel = pi ^ pj ^ (0 if answer is BallAnswer.SAME else 1)
        if self._rank[ri] < self._rank[rj]:
            ri, rj = rj, ri  # rel is symmetric in the two roots
        self._parent[rj] = ri
        self._parity[rj] = rel
        if self._rank[ri] == self._rank[rj]:
            self._rank[ri] += 1
        self.history.append((i, j, answer))

    def components(self) -> list[Component]:
        """Current components, ordered by their smallest ball."""
        sides: dict[int, tuple[list[int], list[int]]] = {}
        for ball in range(1, self._n + 1):
            root, parity = self.find(ball)
            sides.setdefault(root, ([], []))[parity].append(ball)
        comps = []
        for zero, one in sides.values():
            if not one or len(zero) > len(one) or (len(zero) == len(one) and zero[0] < one[0]):
                larger, smaller = zero, one
            else:
                larger, smaller = one, zero
            comps.append(Component(tuple(larger), tuple(smaller)))
        comps.sort(key=lambda comp: comp.min_ball)
        return comps

    def weights(self) -> Position:
        """The weight-level position induced by the current components."""
        return Position(tuple(comp.weight for comp in self.components()))


def locate_ball(comps: list[Component], ball: int) -> tuple[int, bool]:
    """Index of the ball's component and whether it sits on the larger side."""
    for idx, comp in enumerate(comps):
        if ball in comp.larger:
            return idx, True
        if ball in comp.smaller:
            return idx, False
    raise ValueError(f"ball {ball} not found in any component")


def _check_params(g: QuestionGraph, params: GameParams) -> None:
    if g.n != params.n:
        raise ValueError(f"graph holds {g.n} balls but the game has n={params.n}")


def identify_majority(g: QuestionGraph, params: GameParams) -> int | None:
    """Smallest ball certain to be of the majority colour, or None.

    A ball qualifies once the weight position is final and it sits on
    the larger side of a component whose weight exceeds the minority
    capacity.
    """
    _check_params(g, params)
    M = g.weights()
    if not is_final(M, params.e):
        return None
    s = minority_capacity(M, params.e)
    best = None
    for comp in g.components():
        if comp.weight >= s + 1 and (best is None or comp.larger[0] < best):
            best = comp.larger[0]
    return best


def side_status_table(
    comps: list[Component], n: int, k: int
) -> list[tuple[tuple[bool, bool], tuple[bool, bool]]]:
    """Per-side colour statuses realizable by some admissible colouring.

    Walks all 2^c assignments of the components' sides to the two
    colours; an assignment is admissible when one colour reaches k.
    Entry idx holds ((larger can be minority, larger can be majority),
    (smaller can be minority, smaller can be majority)).  Empty smaller
    sides keep (False, False).
    """
    c = len(comps)
    if c > COLOURING_GUARD:
        raise ValueError(f"colouring enumeration is guarded at {COLOURING_GUARD} components")
    larger_sizes = [len(comp.larger) for comp in comps]
    smaller_sizes = [len(comp.smaller) for comp in comps]
    larger_minority = [False] * c
    larger_majority = [False] * c
    smaller_minority = [False] * c
    smaller_majority = [False] * c
    for mask in range(1 << c):
        count_a = 0
        for idx in range(c):
            count_a += smaller_sizes[idx] if (mask >> idx) & 1 else larger_sizes[idx]
        if count_a >= k:
            majority_is_a = True
        elif n - count_a >= k:
            majority_is_a = False
        else:
            continue
        for idx in range(c):
            larger_in_a = not ((mask >> idx) & 1)
            if larger_in_a == majority_is_a:
                larger_majority[idx] = True
                if smaller_sizes[idx]:
                    smaller_minority[idx] = True
            else:
                larger_minority[idx] = True
                if smaller_sizes[idx]:
                    smaller_majority[idx] = True
    return [
        ((larger_minority[i], larger_majority[i]), (smaller_minority[i], smaller_majority[i]))
        for i in range(c)
    ]


def consistent_colouring_exists(
    g: QuestionGraph, params: GameParams, ball: int, colour: str
) -> bool:
    """Whether some admissible colouring gives the ball the stated colour.

    ``colour`` is 'minority' or 'majority'.  Both sides of a component
    always take opposite colours, and an admissible colouring must give
    one colour at least k balls.  Exhaustive over the 2^c side
    assignments, guarded at 20 components.
    """
    if colour not in ("minority", "majority"):
        raise ValueError(f"colour must be 'minority' or 'majority', got {colour!r}")
    _check_params(g, params)
    g._check_ball(ball)
    comps = g.components()
    idx, on_larger = locate_ball(comps, ball)
    table = side_status_table(comps, params.n, params.k)
    minority_ok, majority_ok = table[idx][0 if on_larger else 1]
    return minority_ok if colour == "minority" else majority_ok


def _move_for_pair(M: Position, w: int, wp: int) -> Move:
    """Indices of one occurrence each of w and w' (w >= w') in M."""
    first = M.elements.index(w)
    second = M.elements.index(wp, first + 1)
    return Move(first, second)


def induced_move_and_choice(
    g: QuestionGraph, i: int, j: int, answer: BallAnswer
) -> tuple[Move, AssignerChoice]:
    """The weight-level move and choice realized by answering (i, j).

    Only defined for balls in distinct components.  The answer merges
    the two bipartitions; sides aligned (both balls on their larger or
    both on their smaller sides) make 'same' add the weights, opposite
    sides make 'same' cancel them.
    """
    comps = g.components()
    ci, i_on_larger = locate_ball(comps, i)
    cj, j_on_larger = locate_ball(comps, j)
    if ci == cj:
        raise ValueError(f"balls {i} and {j} share a component; no move is induced")
    wi, wj = comps[ci].weight, comps[cj].weight
    w, wp = max(wi, wj), min(wi, wj)
    move = _move_for_pair(g.weights(), w, wp)
    plus = (i_on_larger == j_on_larger) == (answer is BallAnswer.SAME)
    return move, AssignerChoice.PLUS if plus else AssignerChoice.MINUS


def adversarial_answer(
    g: QuestionGraph,
    i: int,
    j: int,
    params: GameParams,
    mode: str = "optimal",
    solver: GameSolver | None = None,
) -> BallAnswer:
    """An answer that keeps identification as expensive as possible.

    Within a component the answer is forced.  Across components the
    weight-level Assigner picks a reply — exact minimax for mode
    'optimal', the potential heuristic for mode 'potential' — and the
    reply is translated back through the balls' sides.  A comparison
    touching a weight-0 component yields the same position either way
    and is answered 'same'.
    """
    _check_params(g, params)
    forced = g.forced_answer(i, j)
    if forced is not None:
        return forced
    comps = g.components()
    ci, i_on_larger = locate_ball(comps, i)
    cj, j_on_larger = locate_ball(comps, j)
    wi, wj = comps[ci].weight, comps[cj].weight
    if min(wi, wj) == 0:
        return BallAnswer.SAME
    M = g.weights()
    move = _move_for_pair(M, max(wi, wj), min(wi, wj))
    if mode == "optimal":
        if solver is None:
            solver = GameSolver(params)
        choices = solver.optimal_assigner_choices(M, move)
        choice = AssignerChoice.MINUS if AssignerChoice.MINUS in choices else AssignerChoice.PLUS
    elif mode == "potential":
        choice = potential_guided_choice(M, params.e, move)
    else:
        raise ValueError(f"unknown adversary mode {mode!r}")
    same_realizes_plus = i_on_larger == j_on_larger
    if choice is AssignerChoice.PLUS:
        return BallAnswer.SAME if same_realizes_plus else BallAnswer.DIFFERENT
    return BallAnswer.DIFFERENT if same_realizes_plus else BallAnswer.SAME


def optimal_selector_comparison(
    g: QuestionGraph, params: GameParams, solver: GameSolver
) -> tuple[int, int]:
    """A concrete ball pair realizing an optimal Selector move.

    Takes the lexicographically smallest optimal value pair and the
    smallest-ball representatives of matching components.  Which balls
    inside the components are compared is immaterial: the adversary
    controls the outcome through its answer either way.
    """
    _check_params(g, params)
    M = g.weights()
    pairs = solver.optimal_selector_moves(M)
    if not pairs:
        raise ValueError(f"{M} is already final; no comparison is needed")
    w, wp = pairs[0]
    comps = g.components()
    first = next(idx for idx, comp in enumerate(comps) if comp.weight == w)
    second = next(
        idx for idx, comp in enumerate(comps) if idx != first and comp.weight == wp)
    return comps[first].min_ball, comps[second].min_ball


@dataclass
class AdversarialGameRecord:
    """Outcome of one optimal-Selector-versus-adversary game."""

    comparisons: int
    majority_ball: int
    graph: QuestionGraph


def run_adversarial_game(params: GameParams, mode: str = "optimal") -> AdversarialGameRecord:
    """Play an optimal Selector against the adversarial answerer.

    Returns once a majority ball is identified; with mode 'optimal' the
    comparison count always equals the game's exact optimum.
    """
    g = QuestionGraph(params.n)
    solver = GameSolver(params)
    comparisons = 0
    while True:
        ball = identify_majority(g, params)
        if ball is not None:
            return AdversarialGameRecord(comparisons, ball, g)
        i, j = optimal_selector_comparison(g, params, solver)
        answer = adversarial_answer(g, i, j, params, mode=mode, solver=solver)
        g.add_comparison(i, j, answer)
        comparisons += 1


def min_comparisons_ball_level(params: GameParams, force: bool = False) -> int:
    """Worst-case-optimal comparison count by exhaustive strategy search.

    Searches directly over question strategies on labelled ball states
    (partitions of the balls into two-sided components), never consulting
    the weight-level solver: the questioner minimizes over component
    pairs, the answers maximize.  Guarded at n = 8 unless forced.
    """
    if params.n > BALL_SEARCH_GUARD_N and not force:
        raise ValueError(
            f"exhaustive ball-level search is guarded at n={BALL_SEARCH_GUARD_N}; "
            f"pass force=True to override")
    e = params.e
    start = frozenset(
        frozenset((frozenset((ball,)), frozenset())) for ball in range(1, params.n + 1))
    memo: dict[frozenset, int] = {}

    def search(state: frozenset) -> int:
        cached = memo.get(state)
        if cached is not None:
            return cached
        pos = Position(tuple(abs(len(a) - len(b)) for a, b in (tuple(c) for c in state)))
        if is_final(pos, e):
            memo[state] = 0
            return 0
        comps = tuple(state)
        best = None
        for x in range(len(comps)):
            a0, a1 = tuple(comps[x])
            for y in range(x + 1, len(comps)):
                b0, b1 = tuple(comps[y])
                rest = state - {comps[x], comps[y]}
                worst = max(
                    search(rest | {frozenset((a0 | b0, a1 | b1))}),
                    search(rest | {frozenset((a0 | b1, a1 | b0))}),
                )
                if best is None or worst < best:
                    best = worst
        memo[state] = best + 1
        return best + 1

    return search(start)


def export_transcript(g: QuestionGraph, params: GameParams) -> str:
    """Line format: an ``n k`` header, then one ``i j same|different`` per record."""
    _check_params(g, params)
    lines = [f"{params.n} {params.k}"]
    for i, j, answer in g.history:
        lines.append(f"{i} {j} {answer.value}")
    return "\n".join(lines) + "\n"


def import_transcript(text: str) -> tuple[GameParams, QuestionGraph]:
    """Rebuild a graph by replaying an exported transcript.

    Every record passes through add_comparison, so inconsistent
    transcripts raise InconsistentAnswerError.
    """
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty transcript")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"transcript header must be 'n k', got {lines[0]!r}")
    params = GameParams(int(head[0]), int(head[1]))
    g = QuestionGraph(params.n)
    for line in lines[1:]:
        fields = line.split()
        if len(fields) != 3:
            raise ValueError(f"bad transcript record {line!r}")
        try:
            answer = BallAnswer(fields[2])
        except ValueError:
            raise ValueError(f"bad answer {fields[2]!r} in transcript") from None
        g.add_comparison(int(fields[0]), int(fields[1]), answer)
    return params, g


def export_transcript_json(g: QuestionGraph, params: GameParams) -> str:
    _check_params(g, params)
    payload = {
        "n": params.n,
        "k": params.k,
        "comparisons": [
            {"i": i, "j": j, "answer": answer.value} for i, j, answer in g.history
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def import_transcript_json(text: str) -> tuple[GameParams, QuestionGraph]:
    payload = json.loads(text)
    params = GameParams(int(payload["n"]), int(payload["k"]))
    g = QuestionGraph(params.n)
    for record in payload.get("comparisons", []):
        g.add_comparison(int(record["i"]), int(record["j"]), BallAnswer(record["answer"]))
    return params, g
