"""Smoke tests for the python bindings, driven by ctest with PYTHONPATH set
to the build directory (or after `pip install .`)."""

import json
import os
import subprocess

import pytest

import _stallings as st


def test_words():
    assert st.reduce("abBc") == "ac"
    assert st.reduce("aAbBcC") == ""
    assert st.multiply("ab", "BA") == ""
    assert st.invert("ab") == "BA"
    assert st.are_conjugate("ab", "ba")
    assert not st.are_conjugate("abAB", "baBA")
    assert st.cyclic_reduce("abA") == ("a", "b")
    assert st.extract_root("abab") == ("ab", 2)
    assert st.abelianize("aabAB") == [1, 0]
    assert st.abelian_basis_element([3, 2])
    assert not st.abelian_basis_element([2, 2])
    assert st.abelian_partial_basis([[3, 2], [2, 1]])


def test_endomorphisms():
    assert st.apply_endomorphism("ab,b", "a") == "ab"
    assert st.compose("ab,b", "a,ba") == "ab,bab"

    tweaked = st.classify_endomorphism("aabababaaba,aabaaba")
    assert tweaked == {
        "injective": True,
        "surjective": False,
        "automorphism": False,
        "pi1_trivial": False,
    }
    assert st.classify_endomorphism("aabaaabaaba,aabaaba")["automorphism"]

    trace = json.loads(st.fold_trace("aabababaaba,aabaaba"))
    assert len(trace) == 3
    assert all(step["fold_class"] != "bigon" for step in trace)


def test_primitivity():
    assert st.is_primitive("aabab")
    assert st.is_primitive("aBBaB")
    assert not st.is_primitive("abab")
    assert not st.is_primitive("aabb")
    assert st.is_partial_free_basis(["ab", "b"])
    assert not st.is_partial_free_basis(["ab", "BA"])
    steps = json.loads(st.whitehead_trace(["aabab"], 2))
    for step in steps:
        assert step["weight_sequence_before"] != step["weight_sequence_after"]


def test_subgroups():
    s = st.StallingsGraph.build(["aa", "b", "abA"])
    assert s.rank() == 3
    assert s.index() == 2
    assert s.contains("aab")
    assert not s.contains("a")
    assert "digraph" in s.to_dot()

    inf = st.StallingsGraph.build(["aabababaaba", "aabaaba"])
    assert inf.rank() == 2
    assert inf.index() is None
    assert st.is_surjective(["ab", "b"])
    assert not st.is_surjective(["aa", "b"])


def test_systole():
    theta = json.dumps(
        {
            "vertices": [0, 1],
            "edges": [
                {"id": 0, "from": 0, "to": 1},
                {"id": 1, "from": 0, "to": 1},
                {"id": 2, "from": 0, "to": 1},
            ],
        }
    )
    value, witness = st.systole(theta)
    assert value == "2/3"
    assert len(witness) == 2
    value2, _ = st.systole(theta, ["1/2", "1/4", "1/4"])
    assert value2 == "1/2"


@pytest.mark.skipif("STALLINGS_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_roundtrip():
    cli = os.environ["STALLINGS_CLI"]
    out = subprocess.run([cli, "reduce", "abBc"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "ac"
    out = subprocess.run(
        [cli, "primitive", "aabab", "--rank", "2", "--trace"], capture_output=True, text=True
    )
    assert out.returncode == 0
    verdict, body = out.stdout.split("\n", 1)
    assert verdict == "primitive"
    assert isinstance(json.loads(body), list)
