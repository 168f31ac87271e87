"""Chat-completion client for LLM-assisted problem formulation.

The model is asked to emit a DSL document (JSON) rather than host-language
code; whatever comes back is only ever a candidate and must pass the full
verification chain before registration. An offline fixture generator backs
test mode and demos.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass

import httpx

from ..errors import ConfigurationError, ExtractionError, TransportError
from .source import ProblemSource

DEFAULT_API_KEY_ENV = "EMOLAB_LLM_API_KEY"

SYSTEM_PROMPT = """\
You translate optimization problem descriptions into a strict JSON document.

Schema:
{
  "name": string (identifier, no spaces),
  "n_var": int, "n_obj": int, "n_ieq": int, "n_eq": int,
  "lower": number or [number]*n_var,
  "upper": number or [number]*n_var,
  "objectives": [expression string] * n_obj,
  "constraints_ieq": [expression string] * n_ieq  (feasible when <= 0),
  "constraints_eq": [expression string] * n_eq    (feasible when == 0)
}

Expression grammar: numbers; decision variables x[1]..x[n_var];
operators + - * / ^ (power, right-associative) and unary minus;
functions sqrt, sin, cos, exp, abs, log (one argument each);
bounded reductions sum(i=a..b, body) with integer constants a <= b,
where i may be used as a variable index x[i].

All objectives are minimized. Reply with exactly one JSON document in a
```json fenced block and nothing else.

Example request: "minimize the squared distance to the origin and to
(1,...,1) with 4 variables in [0,1]".
Example reply:
```json
{"name": "two_anchors", "n_var": 4, "n_obj": 2, "n_ieq": 0, "n_eq": 0,
 "lower": 0, "upper": 1,
 "objectives": ["sum(i=1..4, x[i]^2)", "sum(i=1..4, (x[i] - 1)^2)"],
 "constraints_ieq": [], "constraints_eq": []}
```
"""


@dataclass(frozen=True)
class LlmClientConfig:
    endpoint: str  # full chat-completions URL
    model: str
    api_key_env: str = DEFAULT_API_KEY_ENV
    timeout_s: float = 60.0


_FENCED = re.compile(r"```(?:json)?\s*(\{.*?\})\s*```", re.DOTALL)


def extract_document(text: str) -> dict:
    """Pull the DSL JSON document out of a model response."""
    match = _FENCED.search(text)
    candidates = [match.group(1)] if match else []
    if not candidates:
        start = text.find("{")
        if start >= 0:
            depth = 0
            for i in range(start, len(text)):
                if text[i] == "{":
                    depth += 1
                elif text[i] == "}":
                    depth -= 1
                    if depth == 0:
                        candidates.append(text[start : i + 1])
                        break
    for candidate in candidates:
        try:
            data = json.loads(candidate)
        except json.JSONDecodeError:
            continue
        if isinstance(data, dict):
            return data
    raise ExtractionError("no DSL document found in response", raw_response=text)


def extract_source(text: str, prompt: str | None = None) -> ProblemSource:
    data = extract_document(text)
    data.setdefault("provenance", "llm")
    data["raw_prompt"] = prompt
    try:
        return ProblemSource.from_dict(data)
    except Exception as exc:
        raise ExtractionError(f"document is not a valid source: {exc}", raw_response=text)


def llm_generate(
    prompt: str,
    config: LlmClientConfig,
    transport: httpx.BaseTransport | None = None,
) -> ProblemSource:
    """Ask the configured endpoint for a problem source.

    Never registers anything: the returned source still has to pass the
    verification chain. The credential is read from the configured
    environment variable before any network activity.
    """
    api_key = os.environ.get(config.api_key_env, "")
    if not api_key:
        raise ConfigurationError(
            f"missing credential: set {config.api_key_env} in the environment"
        )
    body = {
        "model": config.model,
        "messages": [
            {"role": "system", "content": SYSTEM_PROMPT},
            {"role": "user", "content": prompt},
        ],
        "temperature": 0.0,
    }
    try:
        with httpx.Client(transport=transport, timeout=config.timeout_s) as client:
            response = client.post(
                config.endpoint,
                json=body,
                headers={"Authorization": f"Bearer {api_key}"},
            )
    except httpx.HTTPError as exc:
        raise TransportError(f"LLM endpoint unreachable: {exc}") from exc
    if response.status_code != 200:
        raise TransportError(
            f"LLM endpoint returned {response.status_code}: {response.text[:500]}"
        )
    try:
        content = response.json()["choices"][0]["message"]["content"]
    except (KeyError, IndexError, ValueError) as exc:
        raise ExtractionError(
            f"unexpected response shape: {exc}", raw_response=response.text
        ) from exc
    return extract_source(content, prompt=prompt)


# offline fixture used by test mode: a small convex biobjective problem in
# the same shape the model is asked to produce
_FIXTURE_DOCUMENT = {
    "name": "llm_ridge",
    "n_var": 6,
    "n_obj": 2,
    "n_ieq": 0,
    "n_eq": 0,
    "lower": 0,
    "upper": 1,
    "objectives": [
        "x[1]",
        "(1 + 9 * sum(i=2..6, x[i]) / 5) * (1 - sqrt(x[1] / (1 + 9 * sum(i=2..6, x[i]) / 5)))",
    ],
    "constraints_ieq": [],
    "constraints_eq": [],
}


def fixture_response(prompt: str) -> str:
    """Canned chat content for offline operation."""
    return "Here is the problem definition:\n```json\n" + json.dumps(
        _FIXTURE_DOCUMENT, indent=2
    ) + "\n```\n"


def fixture_generate(prompt: str) -> ProblemSource:
    return extract_source(fixture_response(prompt), prompt=prompt)
