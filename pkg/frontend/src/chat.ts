/** Chat view-model: pure state transitions plus an HTML renderer.
 *
 * One request may be in flight at a time. A transport failure or a
 * gateway-degraded reply leaves the typed text intact and surfaces a
 * retry affordance instead of dropping the message. */

import type { ChatReply } from "./models.js";
import type { CoachApi } from "./api.js";

export interface ChatTurn {
  speaker: "user" | "coach";
  text: string;
}

export interface ChatState {
  turns: ChatTurn[];
  composing: boolean;
  pendingText: string;
  retryAvailable: boolean;
  footerVisible: boolean;
  personaName: string;
  displayPhase: string;
}

export function initialChatState(personaName: string): ChatState {
  return {
    turns: [],
    composing: false,
    pendingText: "",
    retryAvailable: false,
    footerVisible: false,
    personaName,
    displayPhase: "Introduction",
  };
}

export function loadTranscript(
  state: ChatState,
  turns: readonly { speaker: "user" | "coach"; text: string }[]
): ChatState {
  return {
    ...state,
    turns: turns.map((turn) => ({ speaker: turn.speaker, text: turn.text })),
  };
}

export async function sendMessage(
  state: ChatState,
  api: CoachApi,
  text: string
): Promise<ChatState> {
  const trimmed = text.trim();
  if (trimmed === "" || state.composing) {
    return state;
  }
  const sending: ChatState = {
    ...state,
    composing: true,
    pendingText: trimmed,
    retryAvailable: false,
  };
  let reply: ChatReply;
  try {
    reply = await api.chat(trimmed);
  } catch {
    // keep pendingText so the retry button can resubmit it verbatim
    return { ...sending, composing: false, retryAvailable: true };
  }
  if (reply.gateway_failed) {
    return {
      ...sending,
      composing: false,
      retryAvailable: true,
      displayPhase: reply.display_phase,
    };
  }
  return {
    ...sending,
    composing: false,
    pendingText: "",
    retryAvailable: false,
    footerVisible: reply.resource_footer_attached || state.footerVisible,
    displayPhase: reply.display_phase,
    turns: [
      ...state.turns,
      { speaker: "user", text: trimmed },
      { speaker: "coach", text: reply.reply_text },
    ],
  };
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderChat(state: ChatState): string {
  const rows = state.turns.map((turn) => {
    const side = turn.speaker === "user" ? "bubble-user" : "bubble-coach";
    const who = turn.speaker === "user" ? "You" : state.personaName;
    return `<div class="bubble ${side}"><span class="speaker">${escapeHtml(who)}</span><p>${escapeHtml(turn.text)}</p></div>`;
  });
  const notices: string[] = [];
  if (state.retryAvailable) {
    notices.push(
      `<div class="chat-retry">Message not delivered. <button type="button" data-action="retry">Retry</button></div>`
    );
  }
  if (state.footerVisible) {
    notices.push(
      `<div class="resource-footer">Support resources are available on the Resources tab.</div>`
    );
  }
  return `<div class="chat" data-phase="${escapeHtml(state.displayPhase)}">${rows.join("")}${notices.join("")}</div>`;
}
