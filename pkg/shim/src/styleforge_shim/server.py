"""FastAPI app implementing the five-endpoint backend protocol.

Responses are order-aligned JSON `{"results": [...]}` bodies. Schema
violations answer 400, requests before the models finish loading answer 503,
and inference failures answer 500 with a structured error body.
"""

from __future__ import annotations

from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .config import ShimConfig
from .roles import RoleSet


class ClassifyRequest(BaseModel):
    texts: list[str] = Field(min_length=1)
    styles: list[str] = Field(min_length=2, max_length=2)


class FillItem(BaseModel):
    masked: str
    target_style: str


class FillRequest(BaseModel):
    items: list[FillItem] = Field(min_length=1)


class GenerateRequest(BaseModel):
    prompts: list[str] = Field(min_length=1)
    temperature: float = Field(default=0.0, ge=0.0)
    max_tokens: int = Field(default=128, ge=1)


class TextsRequest(BaseModel):
    texts: list[str] = Field(min_length=1)


def create_app(config: ShimConfig | None = None, roles: RoleSet | None = None) -> FastAPI:
    """Build the service. Pass preloaded ``roles`` to skip startup loading."""

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        if app.state.roles is None:
            app.state.roles = RoleSet(config)
        yield

    app = FastAPI(title="styleforge-shim", lifespan=lifespan)
    app.state.roles = roles
    if roles is None and config is None:
        raise ValueError("create_app needs a config or preloaded roles")

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": {"type": "schema", "detail": exc.errors()}})

    @app.exception_handler(ValueError)
    async def on_value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"error": {"type": "request", "detail": str(exc)}})

    @app.exception_handler(Exception)
    async def on_inference_error(request: Request, exc: Exception):
        return JSONResponse(
            status_code=500,
            content={"error": {"type": exc.__class__.__name__, "detail": str(exc)}},
        )

    @app.middleware("http")
    async def refuse_until_loaded(request: Request, call_next):
        if app.state.roles is None and request.url.path != "/healthz":
            return JSONResponse(status_code=503, content={"error": {"type": "loading"}})
        return await call_next(request)

    @app.get("/healthz")
    def healthz():
        if app.state.roles is None:
            return JSONResponse(status_code=503, content={"status": "loading"})
        return {"status": "ok"}

    @app.post("/v1/classify")
    def classify(request: ClassifyRequest):
        results = app.state.roles.classifier.classify(request.texts, request.styles)
        return {"results": results}

    @app.post("/v1/fill")
    def fill(request: FillRequest):
        items = [(item.masked, item.target_style) for item in request.items]
        return {"results": [{"text": text} for text in app.state.roles.filler.fill(items)]}

    @app.post("/v1/generate")
    def generate(request: GenerateRequest):
        completions = app.state.roles.generator.generate(
            request.prompts, request.temperature, request.max_tokens
        )
        return {"results": [{"text": text} for text in completions]}

    @app.post("/v1/embed")
    def embed(request: TextsRequest):
        vectors = app.state.roles.embedder.embed(request.texts)
        return {"results": [{"vector": vector} for vector in vectors]}

    @app.post("/v1/perplexity")
    def perplexity(request: TextsRequest):
        values = app.state.roles.ppl.perplexity(request.texts)
        return {"results": [{"ppl": value} for value in values]}

    return app
