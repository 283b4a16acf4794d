// @vitest-environment jsdom

import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { App } from "../src/app";
import { MockService, loadGolden } from "./mock_service";

const golden = loadGolden();
const goldenNodeCount = new Set(golden.clusters.flatMap((c) => c.members.map((m) => m.id))).size;

function mount(): [App, MockService, HTMLElement] {
  const mock = new MockService();
  const root = document.createElement("div");
  document.body.appendChild(root);
  const app = new App(root, new ApiClient("http://mock", mock.fetch));
  return [app, mock, root];
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("search view", () => {
  it("renders the golden node and edge counts", async () => {
    const [app, , root] = mount();
    await app.search("Automaton");
    expect(root.querySelectorAll("svg .nodes g.node").length).toBe(goldenNodeCount);
    expect(root.querySelectorAll("svg .edges line").length).toBe(golden.edges.length);
  });

  it("fills the result table with the selected terms", async () => {
    const [app, , root] = mount();
    await app.search("Automaton");
    const titles = [...root.querySelectorAll("#table-pane tbody tr td:nth-child(2)")].map(
      (td) => td.textContent,
    );
    const expected = golden.clusters.flatMap((c) =>
      c.members.filter((m) => m.selected).map((m) => m.title),
    );
    expect(new Set(titles)).toEqual(new Set(expected));
    // default sort: authority descending
    const weights = [...root.querySelectorAll("#table-pane tbody tr td:nth-child(3)")].map((td) =>
      Number(td.textContent),
    );
    expect(weights).toEqual([...weights].sort((a, b) => b - a));
  });

  it("params panel exposes the seven knobs with CLI defaults", () => {
    const [app, , root] = mount();
    const params = app.readParams();
    expect(params).toEqual({
      t: 50,
      d: 20,
      n: 10,
      c_max: 30,
      epsilon: 1e-8,
      k: 0.5,
      root_mode: "adapted",
    });
    expect(root.querySelectorAll("#params input, #params select").length).toBe(7);
  });

  it("shows an error banner for an unknown word", async () => {
    const [app, , root] = mount();
    await app.search("NoSuchPage");
    const banner = root.querySelector<HTMLDivElement>("#banner")!;
    expect(banner.hidden).toBe(false);
    expect(banner.textContent).toContain("not_found");
    expect(root.querySelectorAll("svg .nodes g.node").length).toBe(0);
  });

  it("layout is deterministic per query", async () => {
    const [app, , root] = mount();
    await app.search("Automaton");
    const grab = () =>
      [...root.querySelectorAll("svg .nodes g.node")].map((g) => g.getAttribute("transform"));
    const first = grab();
    await app.search("Automaton");
    expect(grab()).toEqual(first);
  });
});

describe("expand and hide", () => {
  it("expand adds exactly the fixture neighbors, hide restores the set", async () => {
    const [app] = mount();
    await app.search("Automaton");
    const before = app.model.nodeIds();
    await app.expandNode(20);
    const after = app.model.nodeIds();
    expect(after).toContain(19);
    expect(after.length).toBe(before.length + 1);
    app.hideNode(20);
    expect(app.model.nodeIds()).toEqual(before);
  });

  it("expanding a node with no new neighbors changes nothing", async () => {
    const [app] = mount();
    await app.search("Automaton");
    const before = app.model.nodeIds();
    await app.expandNode(4);
    expect(app.model.nodeIds()).toEqual(before);
  });
});

describe("rate toggle", () => {
  it("round-trips through the session endpoints and mirrors server state", async () => {
    const [app, mock, root] = mount();
    await app.search("Automaton");
    app.focusNode(3);

    root.querySelector<HTMLButtonElement>("#rate-toggle")!.click();
    await app.queue.drain();
    expect(mock.calls.filter((c) => c.includes("/rate"))).toHaveLength(1);
    expect(app.model.nodes.get(3)!.rated).toBe(true);
    const ratedCell = [...root.querySelectorAll("#table-pane tbody tr")]
      .find((tr) => tr.textContent?.includes("Robot"))!
      .querySelector("td:last-child")!;
    expect(ratedCell.textContent).toBe("*");

    root.querySelector<HTMLButtonElement>("#rate-toggle")!.click();
    await app.queue.drain();
    expect(mock.calls.filter((c) => c.includes("/unrate"))).toHaveLength(1);
    expect(app.model.nodes.get(3)!.rated).toBe(false);
  });

  it("keeps marks untouched when the server rejects the rating", async () => {
    const [app, mock, root] = mount();
    await app.search("Automaton");
    await app.expandNode(20); // 19 becomes visible and seen
    app.hideNode(20);
    // 19 is no longer displayed; force a stale rating attempt on a node
    // the server never saw at all
    const stale = 999999;
    (app.model.nodes as Map<number, any>).set(stale, {
      id: stale,
      title: "Stale",
      authority: 0,
      hub: 0,
      selected: false,
      supportingHubs: [],
      clusterIndex: -1,
      clusterLabel: "",
      anchors: new Set(["base"]),
      rated: false,
      expanded: false,
    });
    await app.rateToggle(stale);
    expect(app.model.nodes.get(stale)!.rated).toBe(false);
    expect(root.querySelector<HTMLDivElement>("#banner")!.hidden).toBe(false);
    expect(mock.ratingsOf("mock-token-1")).toEqual([]);
  });

  it("queues rating requests in order", async () => {
    const [app, mock] = mount();
    await app.search("Automaton");
    void app.rateToggle(3);
    void app.rateToggle(2);
    void app.rateToggle(3);
    await app.queue.drain();
    const ops = mock.calls.filter((c) => c.includes("rate"));
    expect(ops).toEqual([
      "POST /session/mock-token-1/rate",
      "POST /session/mock-token-1/rate",
      "POST /session/mock-token-1/unrate",
    ]);
    expect(mock.ratingsOf("mock-token-1")).toEqual([2]);
  });
});

describe("session import", () => {
  it("restores ratings from an uploaded session document", async () => {
    const [app, mock] = mount();
    await app.search("Automaton");
    await app.rateToggle(3);
    await app.queue.drain();
    const exportedResp = await mock.fetch("http://mock/session/mock-token-1");
    const exported = await exportedResp.json();

    document.body.innerHTML = ""; // single-page client: one instance per page
    const [app2, , root2] = mount();
    const file = new File([JSON.stringify(exported)], "session.json", {
      type: "application/json",
    });
    await (app2 as any).uploadSession(file);
    expect(app2.model.nodes.get(3)!.rated).toBe(true);
    expect(root2.querySelectorAll("svg .nodes g.node").length).toBe(goldenNodeCount);
  });
});
