"""HTTP clients for the five-capability backend protocol.

All endpoints speak JSON (UTF-8). A non-2xx status or a schema-invalid body
is a backend error; transport failures are retried once and then raised as
unreachable. Responses are order-aligned with the request batch.
"""

from __future__ import annotations

from typing import Any, Sequence

import requests

from ..masking import MaskedText
from ..textcore import TokenSeq, tokenize
from .base import (
    BackendUnreachable,
    ClassifyResult,
    GenerationParams,
    MalformedResponse,
    TokenScore,
)

_TRANSPORT_ERRORS = (requests.ConnectionError, requests.Timeout)


class HttpBackend:
    """Shared POST + retry + response-shape plumbing for one service base URL."""

    def __init__(self, url: str, *, timeout: float = 60.0, bearer_token: str | None = None):
        self.base_url = url.rstrip("/")
        self.timeout = timeout
        self._headers = {"Content-Type": "application/json"}
        if bearer_token:
            self._headers["Authorization"] = f"Bearer {bearer_token}"
        self._session = requests.Session()

    def _post(self, path: str, payload: dict[str, Any], n_expected: int) -> list[dict[str, Any]]:
        url = f"{self.base_url}{path}"
        last_exc: Exception | None = None
        for _attempt in range(2):
            try:
                response = self._session.post(
                    url, json=payload, headers=self._headers, timeout=self.timeout
                )
                break
            except _TRANSPORT_ERRORS as exc:
                last_exc = exc
        else:
            raise BackendUnreachable(f"cannot reach backend at {url}: {last_exc}")
        if not 200 <= response.status_code < 300:
            raise MalformedResponse(
                f"backend at {url} answered HTTP {response.status_code}: {response.text[:200]}"
            )
        try:
            body = response.json()
        except ValueError as exc:
            raise MalformedResponse(f"backend at {url} returned non-JSON body") from exc
        results = body.get("results") if isinstance(body, dict) else None
        if not isinstance(results, list) or len(results) != n_expected:
            raise MalformedResponse(
                f"backend at {url} returned malformed results (expected {n_expected} items)"
            )
        if not all(isinstance(item, dict) for item in results):
            raise MalformedResponse(f"backend at {url} returned non-object result items")
        return results


class HttpClassifier(HttpBackend):
    def classify(self, texts: Sequence[TokenSeq], styles: tuple[str, str]) -> list[ClassifyResult]:
        payload = {"texts": [" ".join(seq.tokens) for seq in texts], "styles": list(styles)}
        raw = self._post("/v1/classify", payload, len(texts))
        results = []
        for i, item in enumerate(raw):
            probs = item.get("probs")
            scores = item.get("token_scores")
            if not isinstance(probs, dict) or not isinstance(scores, list):
                raise MalformedResponse("classify result missing probs/token_scores", index=i)
            try:
                token_scores = tuple(
                    TokenScore(str(ts["token"]), float(ts["score"])) for ts in scores
                )
                probs = {str(k): float(v) for k, v in probs.items()}
            except (KeyError, TypeError, ValueError) as exc:
                raise MalformedResponse(f"classify result malformed: {exc}", index=i) from exc
            results.append(ClassifyResult(probs=probs, token_scores=token_scores))
        return results


class HttpFiller(HttpBackend):
    def fill(self, items: Sequence[tuple[MaskedText, str]]) -> list[TokenSeq]:
        payload = {
            "items": [
                {"masked": masked.rendered, "target_style": style} for masked, style in items
            ]
        }
        raw = self._post("/v1/fill", payload, len(items))
        outputs = []
        for i, item in enumerate(raw):
            text = item.get("text")
            if not isinstance(text, str):
                raise MalformedResponse("fill result missing text", index=i)
            outputs.append(tokenize(text))
        return outputs


class HttpGenerator(HttpBackend):
    def generate(self, prompts: Sequence[str], params: GenerationParams) -> list[str]:
        payload = {
            "prompts": list(prompts),
            "temperature": params.temperature,
            "max_tokens": params.max_tokens,
        }
        raw = self._post("/v1/generate", payload, len(prompts))
        completions = []
        for i, item in enumerate(raw):
            text = item.get("text")
            if not isinstance(text, str):
                raise MalformedResponse("generate result missing text", index=i)
            completions.append(text)
        return completions


class HttpEmbedder(HttpBackend):
    def embed(self, texts: Sequence[str]) -> list[list[float]]:
        raw = self._post("/v1/embed", {"texts": list(texts)}, len(texts))
        vectors = []
        for i, item in enumerate(raw):
            vec = item.get("vector")
            if not isinstance(vec, list):
                raise MalformedResponse("embed result missing vector", index=i)
            try:
                vectors.append([float(v) for v in vec])
            except (TypeError, ValueError) as exc:
                raise MalformedResponse(f"embed vector malformed: {exc}", index=i) from exc
        return vectors


class HttpPerplexity(HttpBackend):
    def perplexity(self, texts: Sequence[str]) -> list[float]:
        raw = self._post("/v1/perplexity", {"texts": list(texts)}, len(texts))
        values = []
        for i, item in enumerate(raw):
            ppl = item.get("ppl")
            if not isinstance(ppl, (int, float)):
                raise MalformedResponse("perplexity result missing ppl", index=i)
            values.append(float(ppl))
        return values
