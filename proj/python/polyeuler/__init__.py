# Copyright 2026 The polyeuler Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS-IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Exact Euler characteristic and curvature of polyball elements.

Rationals are returned as fractions.Fraction; reports are plain dicts.
"""

import json
from fractions import Fraction

from ._core import (
    Error,
    ParseError,
    PreconditionError,
    Subspace,
    Tuple,
    construct,
)
from . import _core

__all__ = [
    "Error",
    "ParseError",
    "PreconditionError",
    "Subspace",
    "Tuple",
    "chi",
    "construct",
    "csv",
    "curv",
    "curv_simplex",
    "expand",
    "gbc_check",
    "load_subspace",
    "load_tuple",
    "matrix",
    "verify_identities",
]

_RATIONAL_FIELDS = (
    "numerator",
    "denominator",
    "value",
    "level_numerator",
    "level_denominator",
    "level_value",
    "last_value",
    "last_delta",
)


def _fractions(obj):
    if isinstance(obj, dict):
        return {
            k: Fraction(v) if k in _RATIONAL_FIELDS and isinstance(v, str)
            else _fractions(v)
            for k, v in obj.items()
        }
    if isinstance(obj, list):
        return [_fractions(v) for v in obj]
    return obj


def matrix(rows):
    """Converts a matrix of "p/q" strings into Fractions."""
    return [[Fraction(x) for x in row] for row in rows]


def load_tuple(path):
    with open(path, encoding="utf-8") as f:
        return Tuple.from_json(f.read())


def load_subspace(path):
    with open(path, encoding="utf-8") as f:
        return Subspace.from_json(f.read())


def _sequence(kind, source, q_max, source_kind, workers, truncated):
    if isinstance(q_max, int):
        q_max = [q_max]
    text = _core.sequence(kind, source, list(q_max), source_kind, workers,
                          truncated)
    return _fractions(json.loads(text))


def chi(source, q_max, source_kind="coinvariant", workers=1, truncated=False):
    """Euler characteristic sequence over the box truncations q <= q_max."""
    return _sequence("chi", source, q_max, source_kind, workers, truncated)


def curv(source, q_max, source_kind="coinvariant", workers=1, truncated=False):
    """Curvature sequence over the box truncations q <= q_max."""
    return _sequence("curv", source, q_max, source_kind, workers, truncated)


def curv_simplex(source, m_max, source_kind="coinvariant", workers=1):
    """Curvature sequence with simplex normalization for m <= m_max."""
    return _sequence("curv-simplex", source, [m_max], source_kind, workers,
                     False)


def csv(report):
    """CSV text for a sequence returned by chi, curv or curv_simplex."""
    def plain(obj):
        if isinstance(obj, Fraction):
            return str(obj)
        if isinstance(obj, dict):
            return {k: plain(v) for k, v in obj.items()}
        if isinstance(obj, list):
            return [plain(v) for v in obj]
        return obj
    return _core.to_csv(json.dumps(plain(report)))


def gbc_check(source, q_max, source_kind="coinvariant"):
    if isinstance(q_max, int):
        q_max = [q_max]
    return json.loads(_core.gbc_check(source, list(q_max), source_kind))


def verify_identities(tuple_, q_max):
    if isinstance(q_max, int):
        q_max = [q_max]
    return json.loads(_core.verify_identities(tuple_, list(q_max)))


def expand(t, n, max_terms=64):
    return json.loads(_core.expand(str(t), n, max_terms))
