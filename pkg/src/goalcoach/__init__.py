"""Phase-based goal-coaching service library."""

from .clock import Clock, FixedClock
from .config import GatewayConfig, LlmParams, ServiceConfig
from .domain import (
    BEVS_DOMAINS,
    LEGAL_TRANSITIONS,
    Goal,
    Phase,
    UserProfile,
    can_transition,
    compute_goal_progress,
)
from .engine import Engine, EngineOutput, SessionState, resume_phase
from .gateway import (
    LiveGateway,
    ModelGateway,
    ScriptedBackend,
    load_script,
    parse_script,
)
from .metrics import (
    DashboardPayload,
    NotReady,
    checkin_consistency,
    dartboard_view,
    overall_goal_progress,
)
from .patches import ApplyResult, ToolCallPatch, apply_patch
from .providers import (
    CalendarProvider,
    EmailProvider,
    InMemoryCalendar,
    InMemoryEmail,
)
from .report import render_report
from .scheduler import (
    BusyInterval,
    CheckinEvent,
    ReminderFrequency,
    TimeWindow,
    find_slot,
    next_reminder,
    schedule_goal_checkins,
)
from .service import ChatReply, CoachService, SettingsUpdate
from .store import ProfileStore, UserNotFound, UserSettings

__version__ = "0.1.0"

__all__ = [
    "ApplyResult",
    "BEVS_DOMAINS",
    "BusyInterval",
    "CalendarProvider",
    "ChatReply",
    "CheckinEvent",
    "Clock",
    "CoachService",
    "DashboardPayload",
    "EmailProvider",
    "Engine",
    "EngineOutput",
    "FixedClock",
    "GatewayConfig",
    "Goal",
    "InMemoryCalendar",
    "InMemoryEmail",
    "LEGAL_TRANSITIONS",
    "LiveGateway",
    "LlmParams",
    "ModelGateway",
    "NotReady",
    "Phase",
    "ProfileStore",
    "ReminderFrequency",
    "ScriptedBackend",
    "ServiceConfig",
    "SessionState",
    "SettingsUpdate",
    "TimeWindow",
    "ToolCallPatch",
    "UserNotFound",
    "UserProfile",
    "UserSettings",
    "apply_patch",
    "can_transition",
    "checkin_consistency",
    "compute_goal_progress",
    "dartboard_view",
    "find_slot",
    "load_script",
    "next_reminder",
    "overall_goal_progress",
    "parse_script",
    "render_report",
    "resume_phase",
    "schedule_goal_checkins",
    "__version__",
]
