/** Browser bootstrap: wires the pure view-models to the DOM. Everything
 * testable lives in the imported modules; this file is glue only. */

import { CoachApi } from "./api.js";
import {
  initialChatState,
  loadTranscript,
  renderChat,
  sendMessage,
  type ChatState,
} from "./chat.js";
import {
  renderDashboard,
  toViewModel,
  TABS,
  type TabName,
} from "./dashboard.js";
import {
  diffSettings,
  formValuesFrom,
  renderSettingsForm,
  validateFormValues,
  type SettingsFormValues,
} from "./settings.js";
import type { Settings } from "./models.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing #${id}`);
  return node as T;
}

async function start(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const token =
    params.get("token") ?? window.sessionStorage.getItem("coach_token") ?? "";
  if (token === "") {
    el("app").innerHTML =
      '<p class="login-note">Open this page with ?token=&lt;your id&gt; to start.</p>';
    return;
  }
  window.sessionStorage.setItem("coach_token", token);
  const api = new CoachApi(params.get("api") ?? "", token);

  let settings: Settings = await api.getSettings();
  let chatState: ChatState = initialChatState(settings.persona.name);
  let activeTab: TabName = TABS[1];

  const transcript = await api.transcript();
  chatState = loadTranscript(chatState, transcript.turns);

  const chatPane = el("chat-pane");
  const dashPane = el("dashboard-pane");
  const settingsPane = el("settings-pane");
  const input = el<HTMLInputElement>("chat-input");

  function paintChat(): void {
    chatPane.innerHTML = renderChat(chatState);
    chatPane.scrollTop = chatPane.scrollHeight;
    const retry = chatPane.querySelector('[data-action="retry"]');
    if (retry !== null) {
      retry.addEventListener("click", () => {
        void submit(chatState.pendingText);
      });
    }
  }

  async function paintDashboard(): Promise<void> {
    const payload = await api.dashboard();
    const vm = toViewModel(payload);
    dashPane.innerHTML = renderDashboard(vm, activeTab);
    for (const button of dashPane.querySelectorAll<HTMLButtonElement>("[data-tab]")) {
      button.addEventListener("click", () => {
        activeTab = button.dataset["tab"] as TabName;
        void paintDashboard();
      });
    }
  }

  function paintSettings(): void {
    settingsPane.innerHTML = renderSettingsForm(formValuesFrom(settings));
    const form = settingsPane.querySelector("form");
    form?.addEventListener("submit", (event) => {
      event.preventDefault();
      const data = new FormData(form);
      const edited: SettingsFormValues = {
        frequency: String(data.get("frequency") ?? ""),
        enabled: data.get("enabled") !== null,
        window: String(data.get("window") ?? ""),
        persona_name: String(data.get("persona_name") ?? ""),
        persona_avatar: String(data.get("persona_avatar") ?? ""),
      };
      const problems = validateFormValues(edited);
      if (problems.length > 0) {
        window.alert(problems.join("\n"));
        return;
      }
      const patch = diffSettings(settings, edited);
      if (patch === null) return;
      void api.putSettings(patch).then((updated) => {
        settings = updated;
        chatState = { ...chatState, personaName: updated.persona.name };
        paintSettings();
        paintChat();
      });
    });
  }

  async function submit(text: string): Promise<void> {
    const before = chatState;
    chatState = await sendMessage(before, api, text);
    if (chatState !== before && !chatState.retryAvailable) {
      input.value = "";
      void paintDashboard();
    }
    paintChat();
  }

  el("chat-form").addEventListener("submit", (event) => {
    event.preventDefault();
    void submit(input.value);
  });
  window.addEventListener("focus", () => {
    void paintDashboard();
  });

  paintChat();
  paintSettings();
  await paintDashboard();
}

void start();
