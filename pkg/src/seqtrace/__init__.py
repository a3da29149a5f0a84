"""Trace semantics for asynchronous sequence diagrams.

Parse a textual diagram DSL, evaluate diagrams to finite trace sets under
bounded loop unrolling, and compare diagrams with each other (refinement)
or with recorded system traces (conformance).
"""

from seqtrace.ast import (
    Alt,
    Basic,
    Consider,
    Create,
    Destroy,
    Fragment,
    Ignore,
    Loc,
    Loop,
    Message,
    Namespace,
    Par,
    Skip,
    Trace,
    TraceSet,
    WeakSeq,
    message_alphabet,
    peers,
    shares_lifeline,
)
from seqtrace.conformance import (
    ConformanceMode,
    TraceLog,
    Verdict,
    Witness,
    conform,
    parse_trace_log,
    refines,
    render_trace,
    validate,
)
from seqtrace.errors import (
    DestroyAbsentError,
    Diagnostic,
    DiagramError,
    DuplicateCreateError,
    DuplicateLifelineError,
    EmptyBlockError,
    InputTooLargeError,
    LogParseError,
    ParseError,
    TraceSetOverflowError,
    UnknownLifelineError,
)
from seqtrace.oracle import (
    GeneratorConfig,
    generate_fragment,
    generate_fragments,
    oracle_interleave,
    oracle_weak,
)
from seqtrace.parser import (
    ParsedDiagram,
    canonicalize,
    dump_diagram,
    parse,
    render_diagram,
    render_fragment,
)
from seqtrace.semantics import (
    DEFAULT_LOOP_BOUND,
    DEFAULT_MAX_TRACES,
    Denotation,
    EvalLimits,
    concat_sets,
    denote,
    filter_trace,
    interleave_sets,
    interleave_traces,
    kleene_bounded,
    namespace_of,
    theorem1_check,
    theorem1_sides,
    weak,
    weak_over_set,
)

__version__ = "0.1.0"

__all__ = [
    "Alt",
    "Basic",
    "Consider",
    "ConformanceMode",
    "Create",
    "DEFAULT_LOOP_BOUND",
    "DEFAULT_MAX_TRACES",
    "Denotation",
    "DestroyAbsentError",
    "Destroy",
    "Diagnostic",
    "DiagramError",
    "DuplicateCreateError",
    "DuplicateLifelineError",
    "EmptyBlockError",
    "EvalLimits",
    "Fragment",
    "GeneratorConfig",
    "Ignore",
    "InputTooLargeError",
    "Loc",
    "LogParseError",
    "Loop",
    "Message",
    "Namespace",
    "Par",
    "ParseError",
    "ParsedDiagram",
    "Skip",
    "Trace",
    "TraceLog",
    "TraceSet",
    "TraceSetOverflowError",
    "UnknownLifelineError",
    "Verdict",
    "WeakSeq",
    "Witness",
    "canonicalize",
    "concat_sets",
    "conform",
    "denote",
    "dump_diagram",
    "filter_trace",
    "generate_fragment",
    "generate_fragments",
    "interleave_sets",
    "interleave_traces",
    "kleene_bounded",
    "message_alphabet",
    "namespace_of",
    "oracle_interleave",
    "oracle_weak",
    "parse",
    "parse_trace_log",
    "peers",
    "refines",
    "render_diagram",
    "render_fragment",
    "render_trace",
    "shares_lifeline",
    "theorem1_check",
    "theorem1_sides",
    "validate",
    "weak",
    "weak_over_set",
]
