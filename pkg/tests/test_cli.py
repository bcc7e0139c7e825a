import pytest

from coocnet.cli import run
from coocnet.graph import read_graph, write_graph
from helpers import TRIANGLE_PENDANT, make_graph


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


@pytest.fixture
def triangle_file(tmp_path):
    g = make_graph([("a", "b", 1), ("b", "c", 1), ("a", "c", 1)])
    path = tmp_path / "triangle.tsv"
    write_graph(g, path)
    return str(path)


@pytest.fixture
def fixture_corpus(tmp_path):
    lexicon = tmp_path / "lex.txt"
    lexicon.write_text("Peter\nPaul\nAnna\n", encoding="utf-8")
    corpus = tmp_path / "corpus.txt"
    corpus.write_text("Peter met Paul\nPaul and Anna\nPeter alone\n", encoding="utf-8")
    return str(lexicon), str(corpus)


def data_lines(text):
    return [line for line in text.splitlines() if not line.startswith("#")]


# -- exit codes and headers ---------------------------------------------------


def test_usage_error_exits_2(capsys):
    assert run(["no-such-command"]) == 2
    capsys.readouterr()


def test_data_error_exits_1(capsys, tmp_path):
    missing = str(tmp_path / "missing.tsv")
    assert run(["graph-stats", missing]) == 1
    capsys.readouterr()


def test_every_output_carries_header(capsys, triangle_file):
    code, out = invoke(capsys, "graph-stats", triangle_file)
    assert code == 0
    assert out.startswith("# coocnet 0.1.0 graph-stats")


def test_version_flag(capsys):
    code = run(["--version"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.strip() == "coocnet 0.1.0"


# -- graph-stats ------------------------------------------------------------------


def test_graph_stats_triangle_row(capsys, triangle_file):
    code, out = invoke(capsys, "graph-stats", triangle_file)
    assert code == 0
    assert data_lines(out) == ["3\t3\t1\t1\t3"]


# -- build-graph -------------------------------------------------------------------


def test_build_graph_deterministic_fixture(capsys, tmp_path, fixture_corpus):
    lexicon, corpus = fixture_corpus
    out1 = tmp_path / "g1.tsv"
    out2 = tmp_path / "g2.tsv"
    for out in (out1, out2):
        assert run(["build-graph", "--mode", "line", "--lexicon", lexicon, corpus, "--out", str(out)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()
    g = read_graph(out1)
    assert g.weight("Paul", "Peter") == 1
    assert g.weight("Anna", "Paul") == 1
    assert g.n == 3


def test_build_graph_threads_do_not_change_output(capsys, tmp_path, fixture_corpus):
    lexicon, corpus = fixture_corpus
    single = tmp_path / "t1.tsv"
    multi = tmp_path / "t8.tsv"
    base = ["build-graph", "--mode", "line", "--lexicon", lexicon, corpus]
    assert run(base + ["--threads", "1", "--out", str(single)]) == 0
    assert run(base + ["--threads", "8", "--out", str(multi)]) == 0
    capsys.readouterr()
    assert single.read_bytes() == multi.read_bytes()


def test_build_graph_env_var_threads(capsys, tmp_path, fixture_corpus, monkeypatch):
    lexicon, corpus = fixture_corpus
    monkeypatch.setenv("COOCNET_THREADS", "4")
    out = tmp_path / "env.tsv"
    assert run(["build-graph", "--mode", "line", "--lexicon", lexicon, corpus, "--out", str(out)]) == 0
    capsys.readouterr()
    baseline = tmp_path / "base.tsv"
    monkeypatch.delenv("COOCNET_THREADS")
    assert run(["build-graph", "--mode", "line", "--lexicon", lexicon, corpus, "--out", str(baseline)]) == 0
    capsys.readouterr()
    assert out.read_bytes() == baseline.read_bytes()


def test_build_graph_freq_table(capsys, tmp_path, fixture_corpus):
    lexicon, corpus = fixture_corpus
    out = tmp_path / "g.tsv"
    freq = tmp_path / "freq.tsv"
    assert run(
        ["build-graph", "--mode", "line", "--lexicon", lexicon, corpus,
         "--out", str(out), "--freq-out", str(freq)]
    ) == 0
    capsys.readouterr()
    rows = data_lines(freq.read_text(encoding="utf-8"))
    assert rows == ["Anna\t1", "Paul\t2", "Peter\t2"]


def test_build_graph_min_freq(capsys, tmp_path, fixture_corpus):
    lexicon, corpus = fixture_corpus
    out = tmp_path / "g.tsv"
    assert run(
        ["build-graph", "--mode", "line", "--lexicon", lexicon, corpus,
         "--min-freq", "2", "--out", str(out)]
    ) == 0
    capsys.readouterr()
    g = read_graph(out)
    assert set(g.vertex_list()) == {"Peter", "Paul"}


def test_build_graph_directory_input(capsys, tmp_path):
    lexicon = tmp_path / "lex.txt"
    lexicon.write_text("A\nB\n", encoding="utf-8")
    docs = tmp_path / "docs"
    docs.mkdir()
    (docs / "one.txt").write_text("A met B. Nothing here.", encoding="utf-8")
    (docs / "two.txt").write_text("B saw A again.", encoding="utf-8")
    out = tmp_path / "g.tsv"
    assert run(["build-graph", "--mode", "sentence", "--lexicon", str(lexicon), str(docs), "--out", str(out)]) == 0
    capsys.readouterr()
    assert read_graph(out).weight("A", "B") == 2


# -- centrality / compare-degree ------------------------------------------------------


def test_centrality_degree_output(capsys, triangle_file):
    code, out = invoke(capsys, "centrality", triangle_file, "--metric", "degree")
    assert code == 0
    assert data_lines(out) == ["a\t2", "b\t2", "c\t2"]


def test_centrality_eigenvector_triangle_uniform(capsys, triangle_file):
    code, out = invoke(capsys, "centrality", triangle_file, "--metric", "eigenvector")
    assert code == 0
    values = [float(line.split("\t")[1]) for line in data_lines(out)]
    for v in values:
        assert abs(v - 3 ** -0.5) < 1e-6


def test_centrality_eigenvector_weighted_emits_both_columns(capsys, tmp_path):
    g = make_graph([("a", "b", 9), ("b", "c", 1)])
    path = tmp_path / "g.tsv"
    write_graph(g, path)
    code, out = invoke(capsys, "centrality", str(path), "--metric", "eigenvector", "--weighted")
    assert code == 0
    for line in data_lines(out):
        assert len(line.split("\t")) == 3


def test_centrality_popularity_reads_freq_table(capsys, tmp_path):
    freq = tmp_path / "freq.tsv"
    freq.write_text("# header\nPaul\t2\nPeter\t3\n", encoding="utf-8")
    code, out = invoke(capsys, "centrality", str(freq), "--metric", "popularity")
    assert code == 0
    assert data_lines(out) == ["Paul\t2", "Peter\t3"]


def test_compare_degree_self(capsys, triangle_file):
    code, out = invoke(capsys, "compare-degree", triangle_file, triangle_file)
    assert code == 0
    assert data_lines(out) == ["2\t2\t3"]


def test_compare_degree_null_column(capsys, triangle_file):
    code, out = invoke(
        capsys, "compare-degree", triangle_file, triangle_file,
        "--null", "shuffle", "--replicas", "3", "--seed", "1",
    )
    assert code == 0
    rows = data_lines(out)
    assert all(len(row.split("\t")) == 4 for row in rows)
    assert "seed=1" in out.splitlines()[0]


# -- similarity ----------------------------------------------------------------------


def test_similarity_pair(capsys, tmp_path):
    path = tmp_path / "g.tsv"
    write_graph(make_graph(TRIANGLE_PENDANT), path)
    code, out = invoke(capsys, "similarity", str(path), "--metric", "jaccard", "--pair", "1", "2")
    assert code == 0
    assert data_lines(out) == ["1\t2\t0.333333333333"]


def test_similarity_all_sorted(capsys, triangle_file):
    code, out = invoke(capsys, "similarity", triangle_file, "--metric", "cosine", "--all")
    assert code == 0
    rows = data_lines(out)
    assert [r.split("\t")[:2] for r in rows] == [["a", "b"], ["a", "c"], ["b", "c"]]


def test_similarity_top_k(capsys, tmp_path):
    path = tmp_path / "g.tsv"
    write_graph(make_graph(TRIANGLE_PENDANT), path)
    code, out = invoke(
        capsys, "similarity", str(path), "--metric", "cosine", "--vertex", "1", "--top-k", "2"
    )
    assert code == 0
    rows = [r.split("\t") for r in data_lines(out)]
    assert [r[1] for r in rows] == ["4", "2"]
    assert all(r[0] == "1" for r in rows)


def test_similarity_requires_exactly_one_mode(capsys, triangle_file):
    assert run(["similarity", triangle_file, "--metric", "cosine"]) == 1
    capsys.readouterr()
    assert run(["similarity", triangle_file, "--metric", "cosine", "--all", "--pair", "a", "b"]) == 1
    capsys.readouterr()


def test_similarity_unknown_vertex_is_data_error(capsys, triangle_file):
    assert run(["similarity", triangle_file, "--metric", "cosine", "--pair", "a", "zz"]) == 1
    capsys.readouterr()


# -- qap / null-model ------------------------------------------------------------------


def test_qap_self_correlation(capsys, triangle_file):
    code, out = invoke(capsys, "qap", triangle_file, triangle_file, "--permutations", "100", "--seed", "7")
    assert code == 0
    row = data_lines(out)[0].split("\t")
    assert row[0] == "1"
    assert row[1] == "100"
    assert row[4] == "3"
    assert "seed=7" in out.splitlines()[0]


def test_null_model_shuffle_writes_graph(capsys, tmp_path, triangle_file):
    out = tmp_path / "null.tsv"
    assert run(["null-model", triangle_file, str(out), "--kind", "shuffle", "--seed", "3"]) == 0
    capsys.readouterr()
    g = read_graph(out)
    assert g.m == 3


def test_null_model_rewire_deterministic(capsys, tmp_path):
    g = make_graph(
        [("a", "b", 1), ("c", "d", 2), ("e", "f", 3), ("a", "c", 1), ("b", "f", 2), ("d", "e", 1)]
    )
    src = tmp_path / "src.tsv"
    write_graph(g, src)
    out1 = tmp_path / "n1.tsv"
    out2 = tmp_path / "n2.tsv"
    for out in (out1, out2):
        assert run(["null-model", str(src), str(out), "--kind", "rewire", "--seed", "5", "--iterations", "60"]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()


# -- eval subcommands ---------------------------------------------------------------------


def test_eval_bins_with_categories(capsys, tmp_path):
    graph_path = tmp_path / "g.tsv"
    write_graph(make_graph(TRIANGLE_PENDANT), graph_path)
    cats = tmp_path / "cats.tsv"
    cats.write_text("1\tx\n2\tx\n3\ty\n4\ty\n", encoding="utf-8")
    code, out = invoke(
        capsys, "eval-bins", str(graph_path), "--metric", "cosine", "--reference", str(cats), "--bins", "4"
    )
    assert code == 0
    rows = data_lines(out)
    assert len(rows) == 4
    header = out.splitlines()[0]
    assert "lo=" in header and "hi=" in header
    assert sum(int(r.split("\t")[3]) for r in rows) > 0


def test_eval_bins_with_geo(capsys, tmp_path, triangle_file):
    geo = tmp_path / "geo.tsv"
    geo.write_text("a\t0.0\t0.0\nb\t0.0\t1.0\nc\t1.0\t0.0\n", encoding="utf-8")
    code, out = invoke(
        capsys, "eval-bins", triangle_file, "--metric", "jaccard", "--reference", str(geo), "--bins", "2"
    )
    assert code == 0
    assert "reference-kind=geo" in out.splitlines()[0]


def test_eval_distance_output_shape(capsys, tmp_path, triangle_file):
    geo = tmp_path / "geo.tsv"
    geo.write_text("a\t0.0\t0.0\nb\t0.0\t1.0\nc\t1.0\t0.0\n", encoding="utf-8")
    code, out = invoke(
        capsys, "eval-distance", triangle_file, "--reference", str(geo),
        "--max-distance", "3", "--null-replicas", "2", "--seed", "4",
    )
    assert code == 0
    rows = data_lines(out)
    assert rows
    for row in rows:
        d, mean, count, null_mean, low_conf = row.split("\t")
        assert int(d) >= 1
        assert int(count) > 0
        float(mean)
        assert null_mean == "NA" or float(null_mean) >= 0
        assert low_conf in ("0", "1")


def test_eval_distance_rerun_identical(capsys, tmp_path, triangle_file):
    geo = tmp_path / "geo.tsv"
    geo.write_text("a\t0.0\t0.0\nb\t0.0\t1.0\nc\t1.0\t0.0\n", encoding="utf-8")
    args = [
        "eval-distance", triangle_file, "--reference", str(geo),
        "--max-distance", "2", "--null-replicas", "3", "--seed", "11",
    ]
    _, out1 = invoke(capsys, *args)
    _, out2 = invoke(capsys, *args)
    assert out1 == out2


def test_out_flag_writes_file(tmp_path, capsys, triangle_file):
    target = tmp_path / "stats.tsv"
    assert run(["graph-stats", triangle_file, "--out", str(target)]) == 0
    out = capsys.readouterr().out
    assert out == ""
    assert target.read_text(encoding="utf-8").startswith("# coocnet")
