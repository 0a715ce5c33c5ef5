import random

import pytest

from critideal.critical import gamma_value
from critideal.graphs import (Graph, canonical_form, delete_vertex, enumerate_connected,
                              enumerate_connected_upto, parse_graph6, path,
                              write_graph6)
from critideal.search import (SearchReport, find_minimal_forbidden, graphs_from_file,
                              is_minimal_forbidden, verify_gamma_equals_f3_free,
                              verify_omega_classification)


def forms(report):
    return {canonical_form(parse_graph6(g6)) for g6, _, _ in report.hits}


def test_k1_gives_p3():
    rep = find_minimal_forbidden(enumerate_connected(3), 1)
    assert forms(rep) == {canonical_form(path(3))}
    assert rep.processed == 2


def test_k2_contains_named_graphs():
    cricket = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4)])
    dart = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (1, 4)])
    rep = find_minimal_forbidden(enumerate_connected_upto(5, 4), 2)
    got = forms(rep)
    for g in (path(4), cricket, dart):
        assert canonical_form(g) in got


def test_k3_on_five_vertices_is_p5():
    rep = find_minimal_forbidden(enumerate_connected(5), 3)
    assert forms(rep) == {canonical_form(path(5))}


@pytest.mark.parametrize("k", [1, 2, 3])
def test_pruning_is_sound(k):
    stream = list(enumerate_connected_upto(6))
    a = find_minimal_forbidden(stream, k, prune=True)
    b = find_minimal_forbidden(stream, k, prune=False)
    assert forms(a) == forms(b)
    assert b.skipped == 0 and a.processed == b.processed == len(stream)


def test_order_independence():
    stream = list(enumerate_connected_upto(6))
    base = forms(find_minimal_forbidden(stream, 2))
    rng = random.Random(9)
    rng.shuffle(stream)
    assert forms(find_minimal_forbidden(stream, 2)) == base


def test_hits_satisfy_definition():
    k = 2
    rep = find_minimal_forbidden(enumerate_connected_upto(6), k)
    for g6, gam, crit in rep.hits:
        g = parse_graph6(g6)
        assert gam == gamma_value(g) >= k + 1 and crit
        assert all(gamma_value(delete_vertex(g, v)) <= k for v in range(g.n))


def test_parallel_matches_serial():
    stream = list(enumerate_connected_upto(5))
    a = find_minimal_forbidden(stream, 2, jobs=1)
    b = find_minimal_forbidden(stream, 2, jobs=2)
    assert a.hits == b.hits and a.skipped == b.skipped


def test_checkpoint_resume(tmp_path):
    ck = tmp_path / "run.ck"
    stream = list(enumerate_connected_upto(5))
    first = find_minimal_forbidden(stream, 2, checkpoint=str(ck))
    lines = ck.read_text().split()
    assert len(lines) == len(stream)
    assert all(bytes.fromhex(s)[0] <= 5 for s in lines)
    again = find_minimal_forbidden(stream, 2, checkpoint=str(ck))
    assert again.hits == first.hits
    # a partial checkpoint resumes to the same answer
    ck2 = tmp_path / "part.ck"
    find_minimal_forbidden(stream[:12], 2, checkpoint=str(ck2))
    resumed = find_minimal_forbidden(stream, 2, checkpoint=str(ck2))
    assert resumed.hits == first.hits


def test_graph6_file_stream(tmp_path):
    f = tmp_path / "g.g6"
    f.write_text("# comment\n" + "\n".join(write_graph6(g) for g in enumerate_connected(4)) + "\n")
    graphs = list(graphs_from_file(str(f)))
    assert len(graphs) == 6
    rep = find_minimal_forbidden(graphs, 2)
    assert forms(rep) == {canonical_form(path(4))}


def test_report_tsv():
    rep = SearchReport(3, [("BW", 2, True)], 1)
    assert rep.tsv() == "BW\t2\tcritical\n"


def test_is_minimal_forbidden():
    assert is_minimal_forbidden(path(3), 1)
    assert not is_minimal_forbidden(path(4), 1)
    assert not is_minimal_forbidden(path(2), 1)
    with pytest.raises(ValueError):
        find_minimal_forbidden([], 0)


def test_omega_classification_small():
    for omega, n in ((2, 3), (2, 5), (3, 5)):
        rep = verify_omega_classification(n, omega)
        assert rep.ok and rep.checked > 0
    with pytest.raises(ValueError):
        verify_omega_classification(5, 4)
    with pytest.raises(ValueError):
        verify_omega_classification(8, 2)


def test_gamma_equals_f3_free_small():
    rep = verify_gamma_equals_f3_free(5)
    assert rep.ok and rep.checked == 1 + 1 + 2 + 6 + 21
