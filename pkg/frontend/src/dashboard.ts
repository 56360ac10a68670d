/** Dashboard view-model and renderers.
 *
 * Every number shown comes straight from the dashboard payload; nothing
 * is recomputed client-side. The tab set and the two header tooltips are
 * fixed regardless of profile state. */

import type { DashboardPayload, GoalView, Insights, Resource } from "./models.js";
import { renderDartboard } from "./dartboard.js";

export const TABS = ["resources", "goals", "insights"] as const;
export type TabName = (typeof TABS)[number];

export const TOOLTIPS = {
  overall_progress:
    "Average completion across your active goals, straight from your check-ins.",
  consistency:
    "Share of the last seven days with at least one check-in conversation.",
} as const;

export interface DashboardViewModel {
  header: {
    displayPhase: string;
    overallProgress: number;
    consistency: number;
    tooltips: typeof TOOLTIPS;
  };
  tabs: readonly TabName[];
  goals: readonly GoalView[];
  insights: Insights;
  resources: readonly Resource[];
}

export function toViewModel(payload: DashboardPayload): DashboardViewModel {
  return {
    header: {
      displayPhase: payload.display_phase,
      overallProgress: payload.overall_progress,
      consistency: payload.consistency,
      tooltips: TOOLTIPS,
    },
    tabs: TABS,
    goals: payload.goals_view,
    insights: payload.insights,
    resources: payload.resources,
  };
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderHeader(vm: DashboardViewModel): string {
  const { displayPhase, overallProgress, consistency, tooltips } = vm.header;
  return [
    `<header class="progress-header">`,
    `<span class="phase-badge">${escapeHtml(displayPhase)}</span>`,
    `<span class="metric" title="${escapeHtml(tooltips.overall_progress)}">Progress ${overallProgress}%</span>`,
    `<span class="metric" title="${escapeHtml(tooltips.consistency)}">Consistency ${consistency}%</span>`,
    `</header>`,
  ].join("");
}

export function renderTabs(vm: DashboardViewModel, active: TabName): string {
  const buttons = vm.tabs.map((tab) => {
    const cls = tab === active ? "tab active" : "tab";
    return `<button type="button" class="${cls}" data-tab="${tab}">${tab[0]!.toUpperCase()}${tab.slice(1)}</button>`;
  });
  return `<nav class="tabs">${buttons.join("")}</nav>`;
}

export function renderGoals(goals: readonly GoalView[]): string {
  if (goals.length === 0) {
    return `<div class="goals-empty">No goals yet. Set one in the chat.</div>`;
  }
  const cards = goals.map((goal) => {
    const steps = goal.next_steps
      .map((step) => `<li>${escapeHtml(step)}</li>`)
      .join("");
    const checkins = goal.scheduled_checkins
      .map(
        (checkin) =>
          `<li class="checkin" data-kind="${escapeHtml(checkin.kind)}">${escapeHtml(checkin.kind)} check-in ${escapeHtml(checkin.start)}${checkin.fallback ? " (auto-placed)" : ""}</li>`
      )
      .join("");
    return [
      `<article class="goal-card" data-goal="${escapeHtml(goal.goal_id)}" data-status="${escapeHtml(goal.status)}">`,
      `<h3>${escapeHtml(goal.description)}</h3>`,
      `<div class="progress-bar"><div class="progress-fill" style="width:${goal.progress}%"></div></div>`,
      `<span class="progress-value">${goal.progress}%</span>`,
      `<span class="duration">${goal.duration_days} days</span>`,
      steps === "" ? "" : `<ul class="next-steps">${steps}</ul>`,
      checkins === "" ? "" : `<ul class="checkins">${checkins}</ul>`,
      `</article>`,
    ].join("");
  });
  return `<div class="goals">${cards.join("")}</div>`;
}

export function renderInsights(insights: Insights): string {
  const themes =
    insights.themes.length === 0
      ? `<p class="themes-empty">Themes appear after a few coaching conversations.</p>`
      : `<ul class="themes">${insights.themes.map((theme) => `<li>${escapeHtml(theme)}</li>`).join("")}</ul>`;
  const stale = insights.themes_stale
    ? `<span class="stale-badge">from an earlier session</span>`
    : "";
  const style = insights.style
    ? `<dl class="style">` +
      `<dt>Tone</dt><dd>${insights.style.tone}</dd>` +
      `<dt>Length</dt><dd>${insights.style.length}</dd>` +
      `<dt>Emotional style</dt><dd>${insights.style.emotional_style}</dd>` +
      `<dt>Thinking style</dt><dd>${insights.style.thinking_style}</dd>` +
      `</dl>`
    : `<p class="style-empty">Communication style appears after you have chatted a bit.</p>`;
  return [
    `<section class="insights">`,
    `<h3>Themes</h3>`,
    stale,
    themes,
    `<h3>Communication style</h3>`,
    style,
    `<h3>Values dartboard</h3>`,
    renderDartboard(insights.dartboard),
    `</section>`,
  ].join("");
}

export function renderResources(resources: readonly Resource[]): string {
  const cards = resources.map(
    (resource) =>
      `<article class="resource-card" data-category="${resource.category}">` +
      `<h3><a href="${escapeHtml(resource.url)}" rel="noopener">${escapeHtml(resource.title)}</a></h3>` +
      `<p>${escapeHtml(resource.description)}</p>` +
      `<span class="category">${resource.category}</span>` +
      `</article>`
  );
  return `<div class="resources">${cards.join("")}</div>`;
}

export function renderDashboard(vm: DashboardViewModel, active: TabName): string {
  let body: string;
  if (active === "goals") {
    body = renderGoals(vm.goals);
  } else if (active === "insights") {
    body = renderInsights(vm.insights);
  } else {
    body = renderResources(vm.resources);
  }
  return [
    renderHeader(vm),
    renderTabs(vm, active),
    `<main class="tab-body" data-active="${active}">${body}</main>`,
  ].join("");
}
