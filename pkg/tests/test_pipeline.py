from __future__ import annotations

import json
from pathlib import Path

import pytest

from orgprofiles.pipeline import PipelineConfig, PipelineError, run_pipeline, validate_config

DATA = Path(__file__).parent / "data" / "smallcorpus"

# Hand-computed ground truth for the bundled 12-record corpus.
EXPECTED_COUNTS = {
    "total_records": 12,
    "malformed_lines": 0,
    "outside_period": 0,
    "doc_type_excluded": 1,
    "no_target_address": 1,
    "university_only": 1,
    "analyzed": 9,
    "distinct_units": 5,
    "network_edges": 4,
    "display_nodes": 2,
    "display_edges": 1,
    "unknown_subject_categories": 0,
    "empty_subject_categories": 1,
    "indicator_rows": 5,
}

EXPECTED_EDGES = {
    ("DEPT APPL PHYS", "FAC SCI"): 1,
    ("DEPT APPL PHYS", "LAB PHOTON"): 1,
    ("DEPT COMP SCI", "FAC SCI"): 2,
    ("DEPT COMP SCI", "INST ROBOT"): 1,
}


def fixture_config(out_dir: Path) -> PipelineConfig:
    config = PipelineConfig.from_toml(DATA / "config.toml")
    config.out_dir = out_dir
    return config


def test_fixture_run_counts(tmp_path):
    report = run_pipeline(fixture_config(tmp_path / "out"))
    assert report.counts == EXPECTED_COUNTS
    assert report.component_sizes == {"full": [5], "display": [2]}
    assert report.universe_sizes == {"subject_categories": 4, "disciplines": 2}


def test_fixture_count_conservation(tmp_path):
    counts = run_pipeline(fixture_config(tmp_path / "out")).counts
    assert counts["total_records"] == (
        counts["outside_period"]
        + counts["doc_type_excluded"]
        + counts["no_target_address"]
        + counts["university_only"]
        + counts["analyzed"]
    )


def test_fixture_edges_and_nodes(tmp_path):
    out = tmp_path / "out"
    run_pipeline(fixture_config(out))
    edge_lines = (out / "edges.csv").read_text(encoding="utf-8").strip().splitlines()[1:]
    edges = {}
    for line in edge_lines:
        source, target, weight = line.split(",")
        edges[(source, target)] = int(weight)
    assert edges == EXPECTED_EDGES

    node_lines = (out / "units.csv").read_text(encoding="utf-8").strip().splitlines()[1:]
    table = {line.split(",")[0]: line.split(",")[1:] for line in node_lines}
    assert table["DEPT COMP SCI"] == ["department", "5", "3.000000"]
    assert table["FAC SCI"] == ["faculty", "3", "4.000000"]
    assert table["DEPT APPL PHYS"] == ["department", "2", "3.000000"]
    assert table["INST ROBOT"] == ["research_center", "2", "0.000000"]
    assert table["LAB PHOTON"] == ["laboratory", "2", "0.000000"]


def test_fixture_type_distribution(tmp_path):
    out = tmp_path / "out"
    run_pipeline(fixture_config(out))
    lines = (out / "type_distribution.csv").read_text(encoding="utf-8").strip().splitlines()
    rows = {line.split(",")[0]: line.split(",")[1:] for line in lines[1:]}
    assert rows["department"] == ["7", "77.8", "2"]
    assert rows["faculty"] == ["3", "33.3", "1"]
    assert rows["research_center"] == ["2", "22.2", "1"]
    assert rows["laboratory"] == ["2", "22.2", "1"]
    assert rows["school"] == ["0", "0.0", "0"]


def test_fixture_indicator_rows(tmp_path):
    out = tmp_path / "out"
    run_pipeline(fixture_config(out))
    lines = (out / "indicators.csv").read_text(encoding="utf-8").strip().splitlines()
    assert lines[0] == "name,type,P,betweenness,gini_sc,n_sc,gini_disc,n_disc"
    assert lines[1:] == [
        "DEPT COMP SCI,department,5,3.000000,0.777778,2,1.000000,1",
        "FAC SCI,faculty,3,4.000000,0.666667,2,0.000000,2",
        "DEPT APPL PHYS,department,2,3.000000,0.777778,2,1.000000,1",
        "INST ROBOT,research_center,2,0.000000,1.000000,1,1.000000,1",
        "LAB PHOTON,laboratory,2,0.000000,0.777778,2,1.000000,1",
    ]
    markdown = (out / "indicators.md").read_text(encoding="utf-8")
    assert "1.00*" in markdown
    assert "<b>0.00</b>" in markdown


def test_fixture_artifact_digests_match_files(tmp_path):
    import hashlib

    out = tmp_path / "out"
    report = run_pipeline(fixture_config(out))
    assert set(report.artifacts) == {
        "exclusion_summary.csv",
        "type_distribution.csv",
        "units.csv",
        "edges.csv",
        "display.graphml",
        "display.dot",
        "display_edges.csv",
        "indicators.csv",
        "indicators.md",
    }
    for name, digest in report.artifacts.items():
        assert hashlib.sha256((out / name).read_bytes()).hexdigest() == digest


def _snapshot(directory: Path) -> dict[str, bytes]:
    return {path.name: path.read_bytes() for path in sorted(directory.iterdir())}


def test_same_config_twice_is_byte_identical(tmp_path):
    config = fixture_config(tmp_path / "out")
    run_pipeline(config)
    first = _snapshot(tmp_path / "out")
    run_pipeline(config)
    second = _snapshot(tmp_path / "out")
    assert first == second


def test_runs_in_different_directories_agree(tmp_path):
    run_pipeline(fixture_config(tmp_path / "a"))
    run_pipeline(fixture_config(tmp_path / "b"))
    first, second = _snapshot(tmp_path / "a"), _snapshot(tmp_path / "b")
    # run_report.json embeds the resolved output directory; everything else
    # must be independent of where the run landed.
    for name in first:
        if name != "run_report.json":
            assert first[name] == second[name], name


def test_university_only_corpus(tmp_path, caplog):
    corpus = tmp_path / "corpus.jsonl"
    corpus.write_text(
        "\n".join(
            json.dumps(
                {
                    "id": f"r{i}",
                    "doc_type": "Article",
                    "year": 2008,
                    "addresses": ["UNIV X, E-18071 G, SPAIN"],
                    "subject_categories": ["A"],
                }
            )
            for i in range(3)
        )
        + "\n",
        encoding="utf-8",
    )
    (tmp_path / "variants.txt").write_text("UNIV X\n", encoding="utf-8")
    (tmp_path / "categories.txt").write_text("A\nB\n", encoding="utf-8")
    (tmp_path / "mapping.csv").write_text("A,D1\nB,D1\n", encoding="utf-8")
    config = PipelineConfig(
        corpus_path=corpus,
        variants_path=tmp_path / "variants.txt",
        categories_path=tmp_path / "categories.txt",
        mapping_path=tmp_path / "mapping.csv",
        out_dir=tmp_path / "out",
    )
    with caplog.at_level("WARNING", logger="orgprofiles.pipeline"):
        report = run_pipeline(config)
    assert report.counts["analyzed"] == 0
    assert report.counts["university_only"] == 3
    assert report.counts["indicator_rows"] == 0
    assert any("no records with organizational units" in m for m in caplog.messages)
    indicators = (tmp_path / "out" / "indicators.csv").read_text(encoding="utf-8")
    assert indicators.strip().splitlines() == [
        "name,type,P,betweenness,gini_sc,n_sc,gini_disc,n_disc"
    ]


def test_stop_after_ingest_writes_only_ingest_outputs(tmp_path):
    out = tmp_path / "out"
    report = run_pipeline(fixture_config(out), stop_after="ingest")
    names = {path.name for path in out.iterdir()}
    assert names == {"exclusion_summary.csv", "type_distribution.csv", "run_report.json"}
    assert report.stages == ["ingest", "parse", "normalize", "report"]
    assert "network_edges" not in report.counts


def test_stop_after_network(tmp_path):
    out = tmp_path / "out"
    report = run_pipeline(fixture_config(out), stop_after="network")
    assert (out / "units.csv").is_file()
    assert not (out / "indicators.csv").exists()
    assert "indicator_rows" not in report.counts


def test_invalid_stop_point(tmp_path):
    with pytest.raises(ValueError, match="stop_after"):
        run_pipeline(fixture_config(tmp_path / "out"), stop_after="everything")


def test_stage_failure_removes_partial_outputs(tmp_path):
    config = fixture_config(tmp_path / "out")
    broken = tmp_path / "mapping.csv"
    broken.write_text("A,D1\nA,D1\n", encoding="utf-8")  # duplicate row
    config.mapping_path = broken
    with pytest.raises(PipelineError) as excinfo:
        run_pipeline(config)
    assert excinfo.value.stage == "profiles"
    leftovers = list((tmp_path / "out").iterdir()) if (tmp_path / "out").exists() else []
    assert leftovers == []


def test_ingest_failure_names_stage(tmp_path):
    corpus = tmp_path / "corpus.jsonl"
    corpus.write_text(
        '{"id": "a", "doc_type": "Article", "year": 2008, "addresses": [], "subject_categories": []}\n'
        '{"id": "a", "doc_type": "Article", "year": 2008, "addresses": [], "subject_categories": []}\n',
        encoding="utf-8",
    )
    config = fixture_config(tmp_path / "out")
    config.corpus_path = corpus
    with pytest.raises(PipelineError) as excinfo:
        run_pipeline(config)
    assert excinfo.value.stage == "ingest"
    assert "duplicate record id" in str(excinfo.value)


def test_validate_config_clean():
    assert validate_config(fixture_config(Path("unused"))) == []


def test_validate_config_missing_files(tmp_path):
    config = fixture_config(tmp_path / "out")
    config.alias_path = tmp_path / "missing_aliases.tsv"
    config.corpus_path = tmp_path / "missing_corpus.jsonl"
    diagnostics = validate_config(config)
    assert any("missing_aliases.tsv" in d for d in diagnostics)
    assert any("missing_corpus.jsonl" in d for d in diagnostics)
    assert len(diagnostics) == 2  # everything reported at once


def test_validate_config_alias_chain(tmp_path):
    chain = tmp_path / "aliases.tsv"
    chain.write_text("A\tB\nB\tC\n", encoding="utf-8")
    config = fixture_config(tmp_path / "out")
    config.alias_path = chain
    diagnostics = validate_config(config)
    assert len(diagnostics) == 1
    assert "line 1" in diagnostics[0] and "line 2" in diagnostics[0]


def test_validate_config_thresholds_and_years(tmp_path):
    config = fixture_config(tmp_path / "out")
    config.min_cooccurrence = -1
    config.min_publications = -5
    config.years = (2010, 2006)
    config.table_unit_type = "institute"
    diagnostics = validate_config(config)
    assert len(diagnostics) == 4


def test_config_from_toml_resolves_relative_paths():
    config = PipelineConfig.from_toml(DATA / "config.toml")
    assert config.corpus_path == DATA / "corpus.jsonl"
    assert config.years == (2006, 2010)
    assert config.min_cooccurrence == 1
    assert config.doc_types == frozenset({"article", "review", "letter", "proceedings_paper"})
