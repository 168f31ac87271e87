from .checks import static_check
from .compiler import compile_source, evaluate_batch
from .expr import FUNCTIONS, BinOp, Call, Const, Neg, Sum, Var, pretty, walk
from .llm import (
    DEFAULT_API_KEY_ENV,
    LlmClientConfig,
    extract_document,
    extract_source,
    fixture_generate,
    fixture_response,
    llm_generate,
)
from .parser import ParseError, Token, parse_expression, tokenize
from .registry import ProblemRegistry, RegisteredProblem, register
from .source import ProblemSource
from .trial import TRIAL_SEED, boundary_probes, latin_hypercube, trial_evaluate
from .verify import STAGES, StageResult, VerificationReport, verify

__all__ = [
    "DEFAULT_API_KEY_ENV",
    "FUNCTIONS",
    "STAGES",
    "TRIAL_SEED",
    "BinOp",
    "Call",
    "Const",
    "LlmClientConfig",
    "Neg",
    "ParseError",
    "ProblemRegistry",
    "ProblemSource",
    "RegisteredProblem",
    "StageResult",
    "Sum",
    "Token",
    "Var",
    "VerificationReport",
    "boundary_probes",
    "compile_source",
    "evaluate_batch",
    "extract_document",
    "extract_source",
    "fixture_generate",
    "fixture_response",
    "latin_hypercube",
    "llm_generate",
    "parse_expression",
    "pretty",
    "register",
    "static_check",
    "tokenize",
    "trial_evaluate",
    "verify",
    "walk",
]
