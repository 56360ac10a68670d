/** Contract suite against the real service: boots `goalcoach serve` with the
 * scripted session fixture and drives it over plain HTTP, exactly as the
 * browser client would. Requires the Python package to be installed. */

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { CoachApi } from "../src/api.js";
import { initialChatState, renderChat, sendMessage } from "../src/chat.js";
import { BOARD_SIZE, renderDartboard } from "../src/dartboard.js";
import { renderHeader, renderTabs, TOOLTIPS, toViewModel } from "../src/dashboard.js";
import { diffSettings, formValuesFrom } from "../src/settings.js";

const PORT = 8199;
const BASE = `http://127.0.0.1:${PORT}`;
const HERE = dirname(fileURLToPath(import.meta.url));
const FIXTURE = join(HERE, "..", "..", "tests", "fixtures", "full_session.json");

const OPENING_REPLY =
  "Glad you're here. Can I know your first name, your college year, and what you're studying?";

let server: ChildProcess;
let workdir: string;

async function waitForServer(): Promise<void> {
  const deadline = Date.now() + 20_000;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/api/resources`, {
        headers: { Authorization: "Bearer probe" },
      });
      if (response.status === 200) return;
    } catch {
      // not listening yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  workdir = mkdtempSync(join(tmpdir(), "coach-contract-"));
  server = spawn(
    "goalcoach",
    [
      "serve",
      "--store",
      join(workdir, "store.json"),
      "--script",
      FIXTURE,
      "--port",
      String(PORT),
    ],
    { stdio: "ignore" }
  );
  await waitForServer();
});

afterAll(() => {
  server.kill("SIGTERM");
  rmSync(workdir, { recursive: true, force: true });
});

describe("UI contract against the running service", () => {
  const api = new CoachApi(BASE, "webuser-1");

  it("renders the scripted opening exchange through the chat view", async () => {
    let state = initialChatState("Coach");
    state = await sendMessage(state, api, "Hi! I am feeling good.");
    expect(state.turns).toEqual([
      { speaker: "user", text: "Hi! I am feeling good." },
      { speaker: "coach", text: OPENING_REPLY },
    ]);
    const html = renderChat(state);
    expect(html).toContain("Hi! I am feeling good.");
    expect(html).toContain("Can I know your first name, your college year,");
    expect(html.indexOf("bubble-user")).toBeLessThan(html.indexOf("bubble-coach"));
  });

  it("persists a reminder frequency change through the settings form", async () => {
    const before = await api.getSettings();
    expect(before.reminder.frequency).toBe("weekly");
    const edited = { ...formValuesFrom(before), frequency: "daily" };
    const patch = diffSettings(before, edited);
    expect(patch).toEqual({ frequency: "daily" });
    await api.putSettings(patch!);
    const after = await api.getSettings();
    expect(after.reminder.frequency).toBe("daily");
    // a re-read of an unchanged form sends nothing
    expect(diffSettings(after, formValuesFrom(after))).toBeNull();
  });

  it("renders three tabs, header tooltips, and a dartboard matching the payload radii", async () => {
    const turns = (
      JSON.parse(readFileSync(FIXTURE, "utf-8")) as {
        user_turns: { text: string }[];
      }
    ).user_turns;
    // first turn was already sent by the chat round-trip test
    for (const turn of turns.slice(1)) {
      const reply = await api.chat(turn.text);
      expect(reply.gateway_failed).toBe(false);
    }

    const payload = await api.dashboard();
    expect(payload.display_phase).toBe("Active Coaching");
    expect(payload.overall_progress).toBe(43);
    expect(payload.insights.dartboard).toHaveLength(4);

    const vm = toViewModel(payload);
    expect(vm.tabs).toEqual(["resources", "goals", "insights"]);
    const tabsHtml = renderTabs(vm, "insights");
    expect(tabsHtml.match(/data-tab=/g)).toHaveLength(3);
    const header = renderHeader(vm);
    expect(header).toContain(`title="${TOOLTIPS.overall_progress}"`);
    expect(header).toContain(`title="${TOOLTIPS.consistency}"`);
    expect(header).toContain("Progress 43%");

    const work = payload.insights.dartboard.find(
      (entry) => entry.domain === "Work/Studies"
    )!;
    expect(work.score).toBe(3);
    expect(work.radius).toBeCloseTo(5 / 7, 6);

    const svg = renderDartboard(payload.insights.dartboard);
    const boardRadius = BOARD_SIZE / 2 - 24;
    const center = BOARD_SIZE / 2;
    // every plotted dot sits at its payload radius, scaled to the board
    const dots = svg.match(/<circle[^>]*class="domain-dot"[^>]*/g)!;
    expect(dots).toHaveLength(4);
    payload.insights.dartboard.forEach((entry, index) => {
      const cx = Number(/cx="([-0-9.]+)"/.exec(dots[index]!)![1]);
      const cy = Number(/cy="([-0-9.]+)"/.exec(dots[index]!)![1]);
      const distance = Math.hypot(cx - center, cy - center);
      expect(distance / boardRadius).toBeCloseTo(entry.radius, 2);
    });
    // and the ring grid is labeled 1-7
    for (let score = 1; score <= 7; score += 1) {
      expect(svg).toContain(`data-score="${score}"`);
    }
  });
});
