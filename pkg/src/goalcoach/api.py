"""HTTP adapter over CoachService.

Authentication is a bearer token treated as the opaque pseudonymous user id;
a deployment that issues real session tokens swaps the identity dependency.
Every error body carries a machine-readable ``code``.
"""

from __future__ import annotations

from fastapi import Depends, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict

from .engine import EmptyUserText
from .service import CoachService, SettingsUpdate
from .store import UserNotFound


class ChatRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    text: str


class Unauthenticated(Exception):
    pass


def _bearer_user(request: Request) -> str:
    header = request.headers.get("authorization", "")
    scheme, _, token = header.partition(" ")
    if scheme.lower() != "bearer" or not token.strip():
        raise Unauthenticated()
    return token.strip()


def create_app(service: CoachService) -> FastAPI:
    app = FastAPI(title="goalcoach", docs_url=None, redoc_url=None)

    @app.exception_handler(Unauthenticated)
    async def _unauthenticated(request: Request, exc: Unauthenticated) -> JSONResponse:
        return JSONResponse(status_code=401, content={"code": "Unauthenticated"})

    @app.exception_handler(UserNotFound)
    async def _user_not_found(request: Request, exc: UserNotFound) -> JSONResponse:
        return JSONResponse(status_code=404, content={"code": "UserNotFound"})

    @app.exception_handler(RequestValidationError)
    async def _validation(request: Request, exc: RequestValidationError) -> JSONResponse:
        detail = [
            {
                "loc": [str(part) for part in error.get("loc", ())],
                "msg": str(error.get("msg", "")),
                "type": str(error.get("type", "")),
            }
            for error in exc.errors()
        ]
        return JSONResponse(
            status_code=422, content={"code": "ValidationError", "detail": detail}
        )

    user_dep = Depends(_bearer_user)

    @app.post("/api/chat")
    def post_chat(body: ChatRequest, user_id: str = user_dep) -> JSONResponse:
        try:
            reply = service.chat(user_id, body.text)
        except EmptyUserText:
            return JSONResponse(
                status_code=422,
                content={"code": "ValidationError", "detail": "text must not be empty"},
            )
        return JSONResponse(content=reply.model_dump(mode="json"))

    @app.get("/api/chat")
    def get_chat(user_id: str = user_dep) -> JSONResponse:
        if not service.store.user_exists(user_id):
            raise UserNotFound(user_id)
        return JSONResponse(content={"turns": service.transcript_view(user_id)})

    @app.get("/api/dashboard")
    def get_dashboard(user_id: str = user_dep) -> JSONResponse:
        payload = service.dashboard(user_id)
        return JSONResponse(content=payload.model_dump(mode="json"))

    @app.get("/api/settings")
    def get_settings(user_id: str = user_dep) -> JSONResponse:
        return JSONResponse(content=service.get_settings(user_id).model_dump(mode="json"))

    @app.put("/api/settings")
    def put_settings(body: SettingsUpdate, user_id: str = user_dep) -> JSONResponse:
        settings = service.update_settings(user_id, body)
        return JSONResponse(content=settings.model_dump(mode="json"))

    @app.post("/api/calendar/connect")
    def connect_calendar(user_id: str = user_dep) -> JSONResponse:
        settings = service.connect_calendar(user_id)
        return JSONResponse(content=settings.model_dump(mode="json"))

    @app.get("/api/resources")
    def get_resources(user_id: str = user_dep) -> JSONResponse:
        return JSONResponse(
            content={
                "resources": [item.model_dump(mode="json") for item in service.resources()]
            }
        )

    @app.delete("/api/user", status_code=204)
    def delete_user(user_id: str = user_dep) -> None:
        if not service.store.user_exists(user_id):
            raise UserNotFound(user_id)
        service.delete_user(user_id)

    return app
