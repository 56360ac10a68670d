"""Command line entry points: serve, chat, report, remind.

The store file is plain JSON; commands that mutate it save back on exit so
repeated invocations compose (chat a bit, then render a report).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import GatewayConfig, ServiceConfig
from .gateway import LiveGateway, ModelGateway, ScriptedBackend, load_script
from .report import render_report
from .service import CoachService
from .store import ProfileStore


def _load_store(path: Path) -> ProfileStore:
    if path.exists():
        return ProfileStore.load(path)
    return ProfileStore()


def _build_gateway(script_path: str | None) -> ModelGateway:
    if script_path:
        return ScriptedBackend(load_script(script_path))
    return LiveGateway(GatewayConfig.from_env())


def _build_service(args: argparse.Namespace, store: ProfileStore) -> CoachService:
    config = ServiceConfig(
        dashboard_url=args.dashboard_url,
        resources_path=args.resources,
    )
    return CoachService(store, _build_gateway(args.script), config=config)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--store", default="coach_store.json", type=Path,
                        help="path to the JSON store file")
    parser.add_argument("--script", default=None,
                        help="scripted backend fixture; omit to use the live gateway")
    parser.add_argument("--resources", default=None,
                        help="support resource catalog file")
    parser.add_argument("--dashboard-url", default="http://localhost:8000/dashboard",
                        help="link embedded in calendar events and reminder emails")


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .api import create_app

    store = _load_store(args.store)
    service = _build_service(args, store)
    app = create_app(service)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    store.save(args.store)
    return 0


def cmd_chat(args: argparse.Namespace) -> int:
    store = _load_store(args.store)
    service = _build_service(args, store)
    print("Type a message; blank line or Ctrl-D to finish.")
    for line in sys.stdin:
        text = line.strip()
        if not text:
            break
        reply = service.chat(args.user, text)
        print(f"[{reply.display_phase}] {reply.reply_text}")
        if reply.gateway_failed:
            print("(model backend unavailable; your message was not recorded)")
    store.save(args.store)
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    store = _load_store(args.store)
    service = _build_service(args, store)
    payload = service.dashboard(args.user)
    store.save(args.store)  # themes cache may have been refreshed
    for path in render_report(payload, args.out):
        print(path)
    return 0


def cmd_remind(args: argparse.Namespace) -> int:
    store = _load_store(args.store)
    service = _build_service(args, store)
    sent = service.send_due_reminders()
    store.save(args.store)
    for user_id in sent:
        print(f"reminder queued for {user_id}")
    print(f"sent {len(sent)} reminder(s)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="goalcoach",
                                     description="goal coaching service tools")
    commands = parser.add_subparsers(dest="command", required=True)

    serve = commands.add_parser("serve", help="run the HTTP API")
    _add_common(serve)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", default=8000, type=int)
    serve.set_defaults(func=cmd_serve)

    chat = commands.add_parser("chat", help="chat from stdin as one user")
    _add_common(chat)
    chat.add_argument("--user", required=True, help="pseudonymous user id")
    chat.set_defaults(func=cmd_chat)

    report = commands.add_parser("report", help="render dashboard figures and CSV")
    _add_common(report)
    report.add_argument("--user", required=True, help="pseudonymous user id")
    report.add_argument("--out", default="report", type=Path,
                        help="output directory for the rendered files")
    report.set_defaults(func=cmd_report)

    remind = commands.add_parser("remind", help="send due reminder emails")
    _add_common(remind)
    remind.set_defaults(func=cmd_remind)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
