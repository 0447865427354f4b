from __future__ import annotations

import io
import json

import pytest

from framealign.cli import cli_dispatch
from framealign.fixtures import build_demo_workspace
from framealign.workspace import Workspace


@pytest.fixture(autouse=True)
def isolate_env(monkeypatch):
    monkeypatch.delenv("FRAMEALIGN_WORKSPACE", raising=False)


@pytest.fixture()
def demo_workspace(tmp_path):
    return build_demo_workspace(tmp_path / "ws")


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli_dispatch(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


# ---------------------------------------------------------------- init / ingest


def test_init_creates_workspace(tmp_path):
    root = tmp_path / "fresh"
    code, out, err = run_cli("--workspace", str(root), "init")
    assert code == 0, err
    assert (root / "config.json").exists()
    assert (root / "documents").is_dir()
    assert (root / "lexicon.json").exists()


def test_init_twice_fails(tmp_path):
    root = tmp_path / "fresh"
    assert run_cli("--workspace", str(root), "init")[0] == 0
    code, _, err = run_cli("--workspace", str(root), "init")
    assert code == 3 and "already initialized" in err


def test_ingest_creates_document_and_ids(tmp_path):
    root = tmp_path / "ws"
    run_cli("--workspace", str(root), "init")
    en = tmp_path / "en.txt"
    ar = tmp_path / "ar.txt"
    en.write_text("first paragraph\n\nsecond paragraph", encoding="utf-8")
    ar.write_text("فقرة أولى\n\nفقرة ثانية", encoding="utf-8")
    code, out, err = run_cli(
        "--workspace", str(root), "ingest", "--novel", "TheHobbit", "--chapter", "6",
        "--text", f"EN={en}", "--text", f"AR={ar}",
    )
    assert code == 0, err
    workspace = Workspace.open(root)
    document = workspace.load_document("TheHobbit__6")
    assert [p.pid for p in document.paragraphs] == ["p1", "p2"]
    assert [v.id for v in document.paragraphs[0].versions] == [1, 2]
    assert workspace.state["next_sentence_id"] == 5


def test_ingest_mismatch_exits_1(tmp_path):
    root = tmp_path / "ws"
    run_cli("--workspace", str(root), "init")
    en = tmp_path / "en.txt"
    ar = tmp_path / "ar.txt"
    en.write_text("one\n\ntwo\n\nthree", encoding="utf-8")
    ar.write_text("واحد\n\nاثنان", encoding="utf-8")
    code, _, err = run_cli(
        "--workspace", str(root), "ingest", "--novel", "N", "--chapter", "1",
        "--text", f"EN={en}", "--text", f"AR={ar}",
    )
    assert code == 1
    assert "AlignmentError" in err


def test_env_var_overrides_flag(tmp_path, monkeypatch):
    env_root = tmp_path / "via-env"
    run_cli("--workspace", str(env_root), "init")
    monkeypatch.setenv("FRAMEALIGN_WORKSPACE", str(env_root))
    code, out, _ = run_cli("--workspace", str(tmp_path / "ignored"), "documents")
    assert code == 0  # resolved through the env var; the flag path has no workspace


# ---------------------------------------------------------------- validate


def test_validate_pristine_demo_exits_0(demo_workspace):
    code, out, _ = run_cli("--workspace", str(demo_workspace.root), "validate")
    assert code == 0
    assert "0 errors" in out.splitlines()[-1]


def test_validate_reports_injected_lexicon_cycle(demo_workspace):
    lexicon_path = demo_workspace.root / "lexicon.json"
    doc = json.loads(lexicon_path.read_text(encoding="utf-8"))
    doc["relations"].append({"kind": "inherits_from", "source": "Motion", "target": "Motion_directional"})
    lexicon_path.write_text(json.dumps(doc, ensure_ascii=False), encoding="utf-8")
    code, out, _ = run_cli("--workspace", str(demo_workspace.root), "validate")
    assert code == 1
    assert "LEX002" in out


def test_validate_reports_dangling_sentence(demo_workspace):
    key = "TheHobbit__6-review"
    sets = demo_workspace.load_annotations(key)
    from dataclasses import replace

    broken = [replace(sets[0], sentence_id=99999)] + sets[1:]
    demo_workspace.save_annotations(key, broken)
    code, out, _ = run_cli("--workspace", str(demo_workspace.root), "validate")
    assert code == 1
    assert "ANN015" in out


# ---------------------------------------------------------------- propose


def test_propose_uses_token_sidecar(demo_workspace):
    code, out, _ = run_cli(
        "--workspace", str(demo_workspace.root), "propose",
        "--document", "TheHobbit__6-review", "--language", "EN", "--date", "01/01/2015",
    )
    assert code == 0
    workspace = Workspace.open(demo_workspace.root)
    sets = workspace.load_annotations("TheHobbit__6-review")
    proposed = [s for s in sets if s.sentence_id == 243]
    assert proposed and all(s.status == "AUTO" for s in proposed)
    assert {s.frame for s in proposed} == {"Motion"}  # lemma "roll" from the sidecar
    assert all(s.created_date == "01/01/2015" for s in proposed)


def test_proposed_ids_unique_across_runs(demo_workspace):
    run_cli("--workspace", str(demo_workspace.root), "propose", "--document", "TheHobbit__6-review",
            "--language", "EN")
    run_cli("--workspace", str(demo_workspace.root), "propose", "--document", "TheHobbit__6-review",
            "--language", "AR")
    workspace = Workspace.open(demo_workspace.root)
    ids = [s.id for s in workspace.load_all_annotations()]
    assert len(ids) == len(set(ids))


# ---------------------------------------------------------------- analyze


def test_analyze_markdown_reproduces_demo_distribution(demo_workspace):
    code, out, err = run_cli("--workspace", str(demo_workspace.root), "analyze", "--src", "EN", "--tgt", "AR")
    assert code == 0, err
    assert "| total |  | 72 |" in out
    assert "61/72" in out and "(85%)" in out
    assert err == ""  # no unpaired-set diagnostics


def test_analyze_csv_to_file_with_figures(demo_workspace, tmp_path):
    out_file = tmp_path / "table.csv"
    figures_dir = tmp_path / "figs"
    code, out, err = run_cli(
        "--workspace", str(demo_workspace.root), "analyze", "--src", "EN", "--tgt", "AR",
        "--format", "csv", "--out", str(out_file), "--figures", str(figures_dir),
    )
    assert code == 0, err
    lines = out_file.read_text(encoding="utf-8").strip().splitlines()
    assert len(lines) == 13  # header + 11 rows + total
    rendered = sorted(p.name for p in figures_dir.glob("*.png"))
    assert rendered == ["analysis_parallelism.png", "analysis_shifts.png"]
    for figure in figures_dir.glob("*.png"):
        assert figure.stat().st_size > 1000


def test_analyze_deterministic(demo_workspace):
    first = run_cli("--workspace", str(demo_workspace.root), "analyze", "--src", "EN", "--tgt", "AR")
    second = run_cli("--workspace", str(demo_workspace.root), "analyze", "--src", "EN", "--tgt", "AR")
    assert first == second


def test_documents_command(demo_workspace):
    code, out, _ = run_cli("--workspace", str(demo_workspace.root), "documents")
    assert code == 0
    assert out.split() == ["TheHobbit__6", "TheHobbit__6-review"]


def test_usage_error_exit_code():
    code, _, _ = run_cli("frobnicate")
    assert code == 2


# ---------------------------------------------------------------- persistence


def test_pairing_records_round_trip_and_steer_analysis(demo_workspace):
    workspace = Workspace.open(demo_workspace.root)
    records = [(1000, 1001)]  # first paragraph's EN set explicitly paired to its AR set
    workspace.save_pairings("TheHobbit__6", records)
    assert workspace.load_pairings("TheHobbit__6") == records
    report, diagnostics = workspace.analyze("EN", "AR")
    # explicit record pairs the same sets the order-based fallback would;
    # totals are unchanged and nothing is left dangling
    assert report.table.total == 72 and diagnostics == []


def test_atomic_saves_keep_workspace_loadable(demo_workspace):
    workspace = Workspace.open(demo_workspace.root)
    sets = workspace.load_annotations("TheHobbit__6-review")
    workspace.save_annotations("TheHobbit__6-review", sets)
    reloaded = Workspace.open(demo_workspace.root)
    assert reloaded.load_annotations("TheHobbit__6-review") == sets
    assert not list(demo_workspace.root.glob("annotations/.tmp-*"))


def test_state_counter_survives_reopen(demo_workspace):
    workspace = Workspace.open(demo_workspace.root)
    first = workspace.take_set_ids(3)
    reopened = Workspace.open(demo_workspace.root)
    second = reopened.take_set_ids(1)
    assert second == first + 3
