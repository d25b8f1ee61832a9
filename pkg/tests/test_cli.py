import subprocess
import sys

import pytest

from ringcrosscap.cli import main, split_elements
from ringcrosscap.embedding import EmbeddingCertificate, verify_certificate
from ringcrosscap.graphs import parse_edge_list


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_split_elements():
    assert split_elements("(1,2),(2,2)") == ["(1,2)", "(2,2)"]
    assert split_elements("1 4") == ["1", "4"]
    assert split_elements("(1, 2); 3") == ["(1, 2)", "3"]


def fields(text):
    return dict(line.split(None, 1) for line in text.splitlines() if line.strip())


@pytest.mark.parametrize("spec, want", [
    ("Z8", {"order": "8", "units": "4", "jacobson": "4", "local": "yes", "maximal-ideal": "4"}),
    ("Z3 x Z3", {"order": "9", "units": "4", "jacobson": "1", "local": "no"}),
    ("Z2[x]/(x^3)", {"order": "8", "local": "yes", "maximal-ideal": "4"}),
])
def test_ring(capsys, spec, want):
    code, out, _ = run(capsys, "ring", spec)
    assert code == 0
    got = fields(out)
    assert {k: got[k] for k in want} == want


def test_ring_parse_error_exit_1(capsys):
    code, _, err = run(capsys, "ring", "Z3 x (")
    assert code == 1 and "error" in err


def test_unknown_subcommand_exit_1(capsys):
    with pytest.raises(SystemExit) as info:
        main(["nope"])
    assert info.value.code == 1


def test_classify_z5_writes_certificate(capsys, tmp_path):
    code, out, _ = run(capsys, "--out", str(tmp_path), "classify", "--ring", "Z5", "--family", "gamma", "--S", "4")
    assert code == 0 and "projective" in out
    certs = list(tmp_path.rglob("*.cert"))
    assert certs
    cert = EmbeddingCertificate.from_text(certs[0].read_text())
    assert verify_certificate(cert.graph, cert) and cert.euler_genus == 1


def test_classify_comaximal(capsys):
    code, out, _ = run(capsys, "classify", "--ring", "Z2 x Z4", "--family", "comaximal")
    assert code == 0 and "projective" in out


def test_classify_z7_obstruction(capsys):
    code, out, _ = run(capsys, "classify", "--ring", "Z7", "--family", "gamma", "--S", "1")
    assert code == 0 and "neither" in out and "A2 (isomorphic)" in out


def test_crosscap_k6(capsys):
    code, out, _ = run(capsys, "crosscap", "--named", "K5")
    assert code == 0 and "exact 1" in out


def test_crosscap_union(capsys):
    code, out, _ = run(capsys, "crosscap", "--named", "K5", "--copies", "2")
    assert code == 0 and "exact 2" in out


def test_crosscap_bracket_exit_2(capsys):
    code, out, _ = run(capsys, "--budget", "100", "crosscap", "--ring", "Z9", "--S", "1")
    assert code == 2 and "K36" in out
    code, out, _ = run(capsys, "crosscap", "--ring", "Z9", "--S", "1")
    assert code == 0 and "exact 2" in out


def test_graph_formats(capsys, tmp_path):
    code, out, _ = run(capsys, "--format", "tsv", "graph", "--ring", "Z5", "--S", "2,3")
    assert code == 0
    code, dot, _ = run(capsys, "--format", "dot", "graph", "--ring", "Z5", "--S", "2,3")
    assert dot.startswith("graph") and dot.count("--") == 10
    code, text, _ = run(capsys, "graph", "--named", "A2")
    assert "18" in text


def test_graph_file_roundtrip(capsys, tmp_path):
    path = tmp_path / "k33.txt"
    path.write_text("graph 6 9\n" + "".join(f"e {a} {b}\n" for a in range(3) for b in range(3, 6)))
    code, out, _ = run(capsys, "crosscap", "--file", str(path))
    assert code == 0 and "exact 1" in out
    assert parse_edge_list(path.read_text()).q == 9


def test_bad_S_exit_1(capsys):
    code, _, err = run(capsys, "graph", "--ring", "Z5", "--S", "2")
    assert code == 1 and "error" in err


def test_obstruction_list_and_search(capsys):
    code, out, _ = run(capsys, "obstruction", "list")
    assert code == 0 and all(n in out for n in ("K5", "K33", "K44", "K36", "A2", "B3", "E18"))
    code, out, _ = run(capsys, "obstruction", "K44", "--ring", "Z3 x Z3", "--S", "(1,1),(2,2)")
    assert code == 0 and "K44" in out
    code, _, _ = run(capsys, "obstruction", "K99")
    assert code == 1


def test_verify_paper_section_filter(capsys, tmp_path):
    code, out, _ = run(capsys, "--out", str(tmp_path), "verify-paper", "--section", "5")
    lines = [ln for ln in out.splitlines() if ln.split() and ln.split()[0] in ("PASS", "FAIL", "UNKNOWN", "SKIPPED")]
    assert code == 0
    assert all("[comaximal]" in ln or "[witnesses]" in ln for ln in lines)
    assert (tmp_path / "verify-paper.tsv").exists()


def test_verify_paper_k7_skipped_by_default(capsys):
    code, out, _ = run(capsys, "verify-paper", "--item", "c3")
    assert code == 0 and out.startswith("SKIPPED c3")


def test_verify_paper_include_slow_k7(capsys):
    code, out, _ = run(capsys, "verify-paper", "--item", "c3", "--include-slow")
    assert code == 0 and out.startswith("PASS    c3")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ringcrosscap", "ring", "Z6"], capture_output=True, text=True)
    assert res.returncode == 0 and fields(res.stdout)["canonical"] == "Z2 x Z3"
