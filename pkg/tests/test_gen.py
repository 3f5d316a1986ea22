import pytest

from sccheck.errors import GraphDomainError, GraphFormatError
from sccheck.gen import Xorshift64Star, generate, parse_spec, splitmix64
from sccheck.models import GraphModel, GraphSpec
from sccheck.oracle import scc_oracle
from sccheck.partition import SccPartition


def test_splitmix64_reference_value():
    assert splitmix64(0) == 0xE220A8397B1DCDAF


def test_uniform_draws_lie_in_unit_interval():
    rng = Xorshift64Star(42)
    draws = [rng.random() for _ in range(1000)]
    assert all(0.0 <= u < 1.0 for u in draws)
    assert len(set(draws)) == 1000


def test_same_spec_same_graph():
    assert generate("gnp:n=50,p=0.1,seed=42") == generate("gnp:n=50,p=0.1,seed=42")
    assert generate("gnp:n=50,p=0.1,seed=42") != generate("gnp:n=50,p=0.1,seed=43")


def test_spec_object_and_string_agree():
    spec = GraphSpec(model=GraphModel.DAG, n=20, p=0.3, seed=7)
    assert generate(spec) == generate(str(spec))


@pytest.mark.parametrize("model", ["gnp:n=0,p=0.5", "dag:n=0,p=0.5", "complete:n=0", "empty:n=0", "cycle_chain:n=0,k=1"])
def test_zero_vertices(model):
    assert generate(model).vertex_count == 0


def test_gnp_extremes():
    assert generate("gnp:n=4,p=1").edge_count == 12
    assert generate("gnp:n=4,p=1,loops=1").edge_count == 16
    assert generate("gnp:n=4,p=0").edge_count == 0
    assert not any(u == v for u, v in generate("gnp:n=30,p=0.5,seed=3").edges())


def test_dag_has_only_singleton_components():
    g = generate("dag:n=40,p=0.3,seed=11")
    assert all(u < v for u, v in g.edges())
    assert scc_oracle(g) == SccPartition([v] for v in range(40))


def test_cycle_chain():
    g = generate("cycle_chain:n=6,k=3")
    assert scc_oracle(g) == SccPartition([[0, 1], [2, 3], [4, 5]])
    assert (0, 2) in set(g.edges())


def test_complete():
    g = generate("complete:n=5")
    assert g.edge_count == 20
    assert scc_oracle(g) == SccPartition([range(5)])


def test_deg_sets_probability():
    spec = parse_spec("gnp:n=100,deg=5,seed=1")
    assert spec.p == pytest.approx(0.05)
    assert str(spec) == "gnp:n=100,p=0.05,seed=1"


@pytest.mark.parametrize(
    "text",
    ["gnp", "tree:n=3", "gnp:n=3,q=1", "gnp:p=0.5", "gnp:n=three,p=0.5", "gnp:n=4,p=0.5,deg=2"],
)
def test_malformed_specs(text):
    with pytest.raises(GraphFormatError):
        parse_spec(text)


@pytest.mark.parametrize(
    "text",
    ["gnp:n=5,p=1.5", "dag:n=3", "cycle_chain:n=3,k=5", "gnp:n=-1,p=0.5", "gnp:n=3,p=0.5,seed=-2"],
)
def test_out_of_domain_specs(text):
    with pytest.raises(GraphDomainError):
        parse_spec(text)
