"""Local entropy of covers for subshifts of finite type over Z^d."""

import json

from . import _core

__all__ = ["h_top", "h_mu", "quasi_tile", "language_size", "tuple_check", "sft_entropy", "InputError"]

InputError = _core.InputError


def _dump(x):
    return x if isinstance(x, str) else json.dumps(x)


def h_top(sft, cover, n_max, folner="box"):
    return json.loads(_core.h_top(_dump(sft), _dump(cover), n_max, folner if isinstance(folner, str) else _dump(folner)))


def h_mu(sft, cover, measure, n_max, kind="auto", refine=1, folner="box"):
    folner = folner if isinstance(folner, str) else _dump(folner)
    return json.loads(_core.h_mu(_dump(sft), _dump(cover), _dump(measure), n_max, kind, refine, folner))


def quasi_tile(shapes, target, epsilon):
    return json.loads(_core.quasi_tile(_dump(shapes), _dump(target), epsilon))


def language_size(sft, window):
    return _core.language_size(_dump(sft), _dump(window))


def tuple_check(sft, points, r_max=1, n_max=6):
    return json.loads(_core.tuple_check(_dump(sft), _dump(points), r_max, n_max))


def sft_entropy(sft):
    return _core.sft_entropy(_dump(sft))
