"""CLI contract: output formats, exit codes, serve behavior."""

from __future__ import annotations

import json
import socket
import subprocess
import sys
import time
import urllib.request

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from conftest import FIXTURE_DIR
from relterms.cli import main
from relterms.service import create_app

MANIFEST = str(FIXTURE_DIR / "manifest.json")


def run_cli(*args):
    return CliRunner().invoke(main, list(args))


class TestStats:
    def test_mini_wiki_numbers(self):
        result = run_cli("stats", "--manifest", MANIFEST)
        assert result.exit_code == 0
        assert "pages                  40" in result.output
        assert "links                  117" in result.output
        assert "categories             9" in result.output
        assert "dropped dangling links 3" in result.output

    def test_empty_corpus(self, tmp_path):
        for name in ("d", "l", "c", "m"):
            (tmp_path / name).write_text("")
        result = run_cli(
            "stats",
            "--docs", str(tmp_path / "d"),
            "--links", str(tmp_path / "l"),
            "--cats", str(tmp_path / "c"),
            "--members", str(tmp_path / "m"),
        )
        assert result.exit_code == 0
        assert "pages                  0" in result.output

    def test_two_page_corpus(self, tmp_path):
        (tmp_path / "d").write_text("1\tA\n2\tB\n")
        (tmp_path / "l").write_text("1\t2\n")
        (tmp_path / "c").write_text("")
        (tmp_path / "m").write_text("")
        result = run_cli(
            "stats",
            "--docs", str(tmp_path / "d"),
            "--links", str(tmp_path / "l"),
            "--cats", str(tmp_path / "c"),
            "--members", str(tmp_path / "m"),
        )
        assert result.exit_code == 0
        assert "pages                  2" in result.output
        assert "links                  1" in result.output


class TestExitCodes:
    def test_unknown_word_exits_1(self):
        result = run_cli("search", "NoSuchPage", "--manifest", MANIFEST)
        assert result.exit_code == 1

    def test_bad_flags_exit_2(self):
        result = run_cli("search", "Robot", "--manifest", MANIFEST, "--format", "yaml")
        assert result.exit_code == 2
        result = run_cli("search", "Robot", "--manifest", MANIFEST, "--t", "0")
        assert result.exit_code == 2
        result = run_cli("stats")  # no corpus given
        assert result.exit_code == 2

    def test_corpus_load_failure_exits_3(self, tmp_path):
        result = run_cli("search", "Robot", "--manifest", str(tmp_path / "absent.json"))
        assert result.exit_code == 3
        bad = tmp_path / "manifest.json"
        bad.write_text(json.dumps({"documents": "x", "links": "x", "categories": "x", "membership": "x"}))
        assert run_cli("stats", "--manifest", str(bad)).exit_code == 3


class TestSearchOutput:
    def test_isolated_word_empty_table(self, tmp_path):
        (tmp_path / "d").write_text("1\tLoner\n")
        for name in ("l", "c", "m"):
            (tmp_path / name).write_text("")
        result = run_cli(
            "search", "Loner",
            "--docs", str(tmp_path / "d"),
            "--links", str(tmp_path / "l"),
            "--cats", str(tmp_path / "c"),
            "--members", str(tmp_path / "m"),
        )
        assert result.exit_code == 0
        assert "(no related terms found)" in result.output

    def test_table_matches_golden_selection(self, golden_automaton):
        result = run_cli(
            "search", "Automaton", "--manifest", MANIFEST,
            "--t", "10", "--d", "3", "--n", "5", "--c-max", "12", "--k", "0.5",
        )
        assert result.exit_code == 0
        lines = [l for l in result.output.splitlines() if l and l[:4].strip().isdigit()]
        expected = [
            (m["title"], m["authority"], c["label"])
            for c in golden_automaton["clusters"]
            for m in c["members"]
            if m["selected"]
        ]
        assert len(lines) == len(expected)
        for line, (title, authority, label) in zip(lines, expected):
            assert title in line
            assert f"{authority:.6f}" in line
            assert line.rstrip().endswith(label)

    def test_json_equals_service_body(self, mini_wiki, golden_automaton):
        result = run_cli(
            "search", "Automaton", "--manifest", MANIFEST,
            "--t", "10", "--d", "3", "--n", "5", "--c-max", "12", "--format", "json",
        )
        assert result.exit_code == 0
        client = TestClient(create_app(mini_wiki))
        service = client.get(
            "/search",
            params={"title": "Automaton", "t": 10, "d": 3, "n": 5, "c_max": 12.0},
        )
        assert result.stdout_bytes.rstrip(b"\n") == service.content
        assert json.loads(result.output) == json.loads(service.content)

    def test_dot_output(self, golden_automaton):
        result = run_cli(
            "search", "Automaton", "--manifest", MANIFEST,
            "--t", "10", "--d", "3", "--n", "5", "--c-max", "12", "--format", "dot",
        )
        assert result.exit_code == 0
        out = result.output
        assert out.startswith("digraph")
        selected = sum(
            1 for c in golden_automaton["clusters"] for m in c["members"] if m["selected"]
        )
        assert out.count("peripheries=2") == selected
        assert out.count(" -> ") == len(golden_automaton["edges"])
        assert '1 [label="Automaton", shape=box];' in out

    def test_determinism_across_processes(self):
        cmd = [
            sys.executable, "-m", "relterms.cli",
            "search", "Automaton", "--manifest", MANIFEST, "--format", "json",
        ]
        first = subprocess.run(cmd, capture_output=True, check=True)
        second = subprocess.run(cmd, capture_output=True, check=True)
        assert first.stdout == second.stdout


class TestServe:
    def test_bad_corpus_exits_3(self, tmp_path):
        proc = subprocess.run(
            [sys.executable, "-m", "relterms.cli", "serve", "--manifest", str(tmp_path / "nope.json")],
            capture_output=True,
            timeout=30,
        )
        assert proc.returncode == 3

    def test_occupied_port_exits_4(self):
        blocker = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        blocker.bind(("127.0.0.1", 0))
        blocker.listen(1)
        port = blocker.getsockname()[1]
        try:
            proc = subprocess.run(
                [
                    sys.executable, "-m", "relterms.cli", "serve",
                    "--manifest", MANIFEST, "--listen", f"127.0.0.1:{port}",
                ],
                capture_output=True,
                timeout=60,
            )
            assert proc.returncode == 4
        finally:
            blocker.close()

    def test_health_probe(self):
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.bind(("127.0.0.1", 0))
        port = probe.getsockname()[1]
        probe.close()
        proc = subprocess.Popen(
            [
                sys.executable, "-m", "relterms.cli", "serve",
                "--manifest", MANIFEST, "--listen", f"127.0.0.1:{port}",
            ],
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
        )
        try:
            deadline = time.time() + 30
            body = None
            while time.time() < deadline:
                try:
                    with urllib.request.urlopen(f"http://127.0.0.1:{port}/health", timeout=2) as resp:
                        assert resp.status == 200
                        body = json.loads(resp.read())
                        break
                except OSError:
                    time.sleep(0.2)
            assert body is not None, "server never came up"
            assert body["status"] == "ok"
            assert body["stats"]["page_count"] == 40
        finally:
            proc.terminate()
            proc.wait(timeout=15)
