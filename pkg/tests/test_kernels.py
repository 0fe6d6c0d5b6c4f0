"""The array state machine must match the recursive reference exactly."""

import json
import os
import subprocess
import sys

import pytest

from vtangle.census import enumerate_diagrams


def snapshot(**kwargs):
    return [
        (e.code, e.genus, e.components, e.symmetry)
        for e in enumerate_diagrams(**kwargs)
    ]


@pytest.mark.parametrize(
    "mode,n", [("link", 2), ("link", 3), ("link", 4), ("tangle", 1), ("tangle", 2), ("tangle", 3)]
)
def test_kernel_stream_equals_reference(mode, n):
    common = dict(n=n, mode=mode, no_self_energy=False)
    assert snapshot(engine="kernel", **common) == snapshot(engine="reference", **common)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"no_self_energy": True},
        {"no_self_energy": False, "genus_range": (1, 1)},
        {"no_self_energy": True, "genus_range": (0, 0)},
    ],
)
def test_kernel_respects_filters(kwargs):
    common = dict(n=3, mode="tangle", **kwargs)
    assert snapshot(engine="kernel", **common) == snapshot(engine="reference", **common)


def test_kernel_refuses_disconnected_mode():
    with pytest.raises(ValueError):
        list(enumerate_diagrams(2, "link", connected=False, engine="kernel"))


def test_jit_flag_is_exposed():
    from vtangle import _kernels

    assert isinstance(_kernels.JIT_ENABLED, bool)


INTERPRETED_PROBE = """
import json
from vtangle import _kernels
from vtangle.census import enumerate_diagrams

assert _kernels.JIT_ENABLED is False
rows = [
    (e.code, e.genus, e.components, e.symmetry)
    for e in enumerate_diagrams(2, "tangle", no_self_energy=False, engine="kernel")
]
print(json.dumps(rows))
"""


def test_interpreted_fallback_matches_reference():
    """With VTANGLE_JIT=0 the same kernel source runs as plain numpy."""
    env = dict(os.environ, VTANGLE_JIT="0")
    proc = subprocess.run(
        [sys.executable, "-c", INTERPRETED_PROBE],
        env=env,
        capture_output=True,
        text=True,
        timeout=300,
    )
    assert proc.returncode == 0, proc.stderr
    rows = [tuple(r) for r in json.loads(proc.stdout)]
    ref = snapshot(n=2, mode="tangle", no_self_energy=False, engine="reference")
    assert rows == ref
