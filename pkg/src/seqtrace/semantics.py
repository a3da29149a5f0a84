"""Denotational trace semantics for interaction fragments.

The meaning of a fragment is a pair: the set of traces it can exhibit and
the namespace of lifelines in scope after it. Composition rules:

* basic(m1..mn)      -> weak <m1..mn>
* weakseq(f1..fn)    -> weak applied to every concatenation of child traces
* alt(f1..fn)        -> union of branch traces
* par(f1..fn)        -> interleavings of operand traces
* loop(b)            -> weak applied to the bounded Kleene closure of D(b)
* create/destroy     -> {<>}, adding/removing the name from the namespace
* skip               -> {<>}
* consider(ms, b)    -> keep only ms messages in each trace of b
* ignore(ms, b)      -> drop ms messages from each trace of b

Weak sequencing orders exactly the message pairs that share a lifeline; a
trace set is therefore the set of linear extensions of that partial order
over message occurrences. Occurrences are tracked by position (so repeated
equal messages from loop unrolling stay chained) and erased in the result.

Loops are unbounded in principle; evaluation truncates the closure at an
explicit iteration bound carried in :class:`EvalLimits`. Every operation
aborts with :class:`TraceSetOverflowError` instead of silently truncating
when a trace set would exceed the configured cap.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, replace
from functools import reduce
from typing import Iterable, Sequence

from seqtrace.ast import (
    Alt,
    Basic,
    Consider,
    Create,
    Destroy,
    Fragment,
    Ignore,
    Loop,
    Message,
    Namespace,
    Par,
    Skip,
    Trace,
    TraceSet,
    WeakSeq,
)
from seqtrace.errors import (
    DestroyAbsentError,
    DuplicateCreateError,
    TraceSetOverflowError,
    UnknownLifelineError,
)

DEFAULT_LOOP_BOUND = 2
DEFAULT_MAX_TRACES = 1_000_000

_EMPTY_ONLY: TraceSet = frozenset({()})


@dataclass(frozen=True)
class EvalLimits:
    """Evaluation budget: loop unrolling depth and a hard trace-set cap.

    ``loop_bound`` = 0 makes every loop contribute only the empty trace.
    ``max_traces`` caps the cardinality of every intermediate and final
    trace set; exceeding it raises, it never truncates.
    """

    loop_bound: int = DEFAULT_LOOP_BOUND
    max_traces: int = DEFAULT_MAX_TRACES

    def __post_init__(self) -> None:
        if self.loop_bound < 0:
            raise ValueError("loop_bound must be nonnegative")
        if self.max_traces < 1:
            raise ValueError("max_traces must be positive")


@dataclass(frozen=True)
class Denotation:
    """The meaning of a fragment: its traces and its outgoing namespace."""

    traces: TraceSet
    namespace_out: Namespace


def _ensure_recursion_headroom(depth: int) -> None:
    # Trace enumeration recurses once per message occurrence; very long
    # unrolled traces would otherwise trip the interpreter limit before the
    # trace cap gets a chance to fire.
    needed = depth + 120
    if needed > sys.getrecursionlimit():
        sys.setrecursionlimit(needed)


def weak(ms: Sequence[Message], max_traces: int = DEFAULT_MAX_TRACES) -> TraceSet:
    """All orderings of ``ms`` consistent with its per-lifeline order.

    Occurrence i must precede occurrence j whenever i < j and the two
    messages share a lifeline; all other pairs may commute. The result is
    enumerated directly as the linear extensions of that partial order:
    repeatedly emit any occurrence whose constrainers have all been emitted.
    """
    msgs = tuple(ms)
    n = len(msgs)
    if n == 0:
        return _EMPTY_ONLY
    _ensure_recursion_headroom(n)
    # Transitive reduction of the occurrence order: occurrences on one
    # lifeline form a chain, so an occurrence waits only for the previous
    # occurrence on each of its (at most two) lifelines.
    indeg = [0] * n
    succs: list[list[int]] = [[] for _ in range(n)]
    last_on: dict[str, int] = {}
    for i, m in enumerate(msgs):
        direct = {last_on[name] for name in (m.sender, m.receiver) if name in last_on}
        indeg[i] = len(direct)
        for j in direct:
            succs[j].append(i)
        last_on[m.sender] = i
        last_on[m.receiver] = i
    ready = [i for i in range(n) if indeg[i] == 0]
    out: set[Trace] = set()
    prefix: list[Message] = []

    def extend() -> None:
        if len(prefix) == n:
            out.add(tuple(prefix))
            if len(out) > max_traces:
                raise TraceSetOverflowError(max_traces)
            return
        # Emit each currently-minimal occurrence in turn, backtracking the
        # ready list and indegrees afterwards.
        for idx in range(len(ready)):
            i = ready[idx]
            last = ready.pop()
            if idx < len(ready):
                ready[idx] = last
            opened = 0
            for s in succs[i]:
                indeg[s] -= 1
                if indeg[s] == 0:
                    ready.append(s)
                    opened += 1
            prefix.append(msgs[i])
            extend()
            prefix.pop()
            for _ in range(opened):
                ready.pop()
            for s in succs[i]:
                indeg[s] += 1
            if idx < len(ready):
                ready.append(ready[idx])
                ready[idx] = i
            else:
                ready.append(i)

    extend()
    return frozenset(out)


def weak_over_set(ts: Iterable[Trace], max_traces: int = DEFAULT_MAX_TRACES) -> TraceSet:
    """Union of ``weak`` over every trace in the set.

    A trace already produced is skipped: it is a linear extension of some
    earlier input, so it weaves to exactly the class already in the result.
    """
    out: set[Trace] = set()
    for t in ts:
        if t in out:
            continue
        out |= weak(t, max_traces)
        if len(out) > max_traces:
            raise TraceSetOverflowError(max_traces)
    return frozenset(out)


def concat_sets(
    u: Iterable[Trace], v: Iterable[Trace], max_traces: int = DEFAULT_MAX_TRACES
) -> TraceSet:
    """Pairwise concatenation {x + y | x in u, y in v}."""
    vs = tuple(v)
    out: set[Trace] = set()
    for x in u:
        for y in vs:
            out.add(x + y)
            if len(out) > max_traces:
                raise TraceSetOverflowError(max_traces)
    return frozenset(out)


def kleene_bounded(
    u: Iterable[Trace], k: int, max_traces: int = DEFAULT_MAX_TRACES
) -> TraceSet:
    """Union of the powers u^0 .. u^k, where u^0 = {<>} and u^(n+1) = u^n u."""
    if k < 0:
        raise ValueError("loop bound must be nonnegative")
    us = frozenset(u)
    out: set[Trace] = {()}
    power: TraceSet = _EMPTY_ONLY
    for _ in range(k):
        power = concat_sets(power, us, max_traces)
        out |= power
        if len(out) > max_traces:
            raise TraceSetOverflowError(max_traces)
    return frozenset(out)


def interleave_traces(
    x: Trace, y: Trace, max_traces: int = DEFAULT_MAX_TRACES
) -> TraceSet:
    """Every merge of ``x`` and ``y`` preserving each trace's own order."""
    _ensure_recursion_headroom(len(x) + len(y))
    memo: dict[tuple[int, int], TraceSet] = {}

    def go(i: int, j: int) -> TraceSet:
        key = (i, j)
        cached = memo.get(key)
        if cached is not None:
            return cached
        if i == len(x):
            res: TraceSet = frozenset({y[j:]})
        elif j == len(y):
            res = frozenset({x[i:]})
        else:
            acc: set[Trace] = set()
            head_x = (x[i],)
            for rest in go(i + 1, j):
                acc.add(head_x + rest)
            head_y = (y[j],)
            for rest in go(i, j + 1):
                acc.add(head_y + rest)
            if len(acc) > max_traces:
                raise TraceSetOverflowError(max_traces)
            res = frozenset(acc)
        memo[key] = res
        return res

    return go(0, 0)


def interleave_sets(
    xs: Iterable[Trace], ys: Iterable[Trace], max_traces: int = DEFAULT_MAX_TRACES
) -> TraceSet:
    """Union of trace interleavings over the Cartesian product of two sets."""
    ys_t = tuple(ys)
    out: set[Trace] = set()
    for x in xs:
        for y in ys_t:
            out |= interleave_traces(x, y, max_traces)
            if len(out) > max_traces:
                raise TraceSetOverflowError(max_traces)
    return frozenset(out)


def filter_trace(ms: frozenset[Message] | set[Message], t: Trace) -> Trace:
    """The subsequence of ``t`` retaining exactly the messages in ``ms``."""
    return tuple(m for m in t if m in ms)


def namespace_of(f: Fragment, ns: Namespace) -> Namespace:
    """Thread create/destroy effects; everything else leaves scope alone.

    No validity checking happens here; see ``conformance.validate`` and
    ``denote`` for diagnosed errors.
    """
    match f:
        case Create(name=n):
            return ns | {n}
        case Destroy(name=n):
            return ns - {n}
        case WeakSeq(children=cs):
            cur = frozenset(ns)
            for c in cs:
                cur = namespace_of(c, cur)
            return cur
        case _:
            return frozenset(ns)


def denote(
    f: Fragment, ns: Iterable[str], limits: EvalLimits | None = None
) -> Denotation:
    """Evaluate a fragment under an initial namespace.

    Raises UnknownLifelineError when a message peer is out of scope,
    DuplicateCreateError / DestroyAbsentError on bad lifecycle operations,
    and TraceSetOverflowError past the trace cap. Evaluation is a pure
    function of its arguments.
    """
    if limits is None:
        limits = EvalLimits()
    return _eval(f, frozenset(ns), limits)


def _eval(f: Fragment, ns: Namespace, limits: EvalLimits) -> Denotation:
    mx = limits.max_traces
    match f:
        case Basic(messages=msgs):
            locs = f.message_locs
            for idx, m in enumerate(msgs):
                loc = locs[idx] if locs is not None else f.loc
                if m.sender not in ns:
                    raise UnknownLifelineError(m.sender, loc)
                if m.receiver not in ns:
                    raise UnknownLifelineError(m.receiver, loc)
            return Denotation(weak(msgs, mx), ns)
        case WeakSeq(children=children):
            parts: list[TraceSet] = []
            cur = ns
            for child in children:
                d = _eval(child, cur, limits)
                parts.append(d.traces)
                cur = d.namespace_out
            combined = reduce(lambda u, v: concat_sets(u, v, mx), parts)
            return Denotation(weak_over_set(combined, mx), cur)
        case Alt(branches=branches):
            out: set[Trace] = set()
            for b in branches:
                out |= _eval(b, ns, limits).traces
                if len(out) > mx:
                    raise TraceSetOverflowError(mx, f.loc)
            return Denotation(frozenset(out), ns)
        case Par(operands=operands):
            sets = [_eval(op, ns, limits).traces for op in operands]
            traces = reduce(lambda u, v: interleave_sets(u, v, mx), sets)
            return Denotation(traces, ns)
        case Loop(body=body):
            body_traces = _eval(body, ns, limits).traces
            closed = kleene_bounded(body_traces, limits.loop_bound, mx)
            return Denotation(weak_over_set(closed, mx), ns)
        case Create(name=n):
            if n in ns:
                raise DuplicateCreateError(n, f.loc)
            return Denotation(_EMPTY_ONLY, ns | {n})
        case Destroy(name=n):
            if n not in ns:
                raise DestroyAbsentError(n, f.loc)
            return Denotation(_EMPTY_ONLY, ns - {n})
        case Skip():
            return Denotation(_EMPTY_ONLY, ns)
        case Consider(alphabet=alphabet, body=body):
            d = _eval(body, ns, limits)
            return Denotation(
                frozenset(filter_trace(alphabet, t) for t in d.traces), ns
            )
        case Ignore(alphabet=alphabet, body=body):
            # Equivalent to keeping the complement of `alphabet` within the
            # whole diagram's message alphabet: traces only ever contain
            # messages that occur in the diagram.
            d = _eval(body, ns, limits)
            return Denotation(
                frozenset(tuple(m for m in t if m not in alphabet) for t in d.traces),
                ns,
            )
    raise TypeError(f"not a fragment: {f!r}")


def theorem1_sides(
    body: Fragment,
    ns: Iterable[str],
    k: int,
    limits: EvalLimits | None = None,
) -> tuple[TraceSet, TraceSet]:
    """Both sides of the bounded loop-unrolling identity, as real ASTs.

    Left: loop(body) evaluated with loop bound ``k``. Right: the alternative
    over skip and the 1..k-fold weak self-compositions of the body. Both
    sides are evaluated independently under the same limits (with the loop
    bound pinned to ``k`` so nested loops are treated identically).
    """
    if limits is None:
        limits = EvalLimits()
    bounded = replace(limits, loop_bound=k)
    left = denote(Loop(body), ns, bounded).traces
    branches: list[Fragment] = [Skip()]
    for n in range(1, k + 1):
        branches.append(body if n == 1 else WeakSeq((body,) * n))
    right = denote(Alt(tuple(branches)), ns, bounded).traces
    return left, right


def theorem1_check(
    body: Fragment,
    ns: Iterable[str],
    k: int,
    limits: EvalLimits | None = None,
) -> bool:
    """True iff the bounded loop equals its unrolled alternative form."""
    left, right = theorem1_sides(body, ns, k, limits)
    return left == right
