"""Python access to the reppact solver.

Configs and tallies are plain dicts in the same shape as the JSON files the
command line tool reads.
"""

import json

from . import _core
from ._core import ReppactError

__all__ = [
    "ReppactError",
    "brute_force_solve",
    "check_committee",
    "check_feasibility",
    "count_votes",
    "deficit_report",
    "find_forced_candidates",
    "load_tally_csv",
    "make_receipt",
    "price_report",
    "render_report",
    "sha256_hex",
    "solve",
    "validate_config",
    "whatif",
    "write_lp",
]


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def _tally(tally):
    """Accepts a full tally dict or a bare {candidate_id: votes} mapping."""
    if isinstance(tally, dict) and "votes" not in tally:
        tally = {"votes": tally, "total_votes_cast": sum(tally.values())}
    return _dump(tally)


def validate_config(config):
    return json.loads(_core.validate_config(_dump(config)))


def solve(config, tally, node_budget=0):
    return json.loads(_core.solve(_dump(config), _tally(tally), node_budget))


def brute_force_solve(config, tally):
    return json.loads(_core.brute_force_solve(_dump(config), _tally(tally)))


def check_committee(committee, config):
    return json.loads(_core.check_committee(list(committee), _dump(config)))


def count_votes(config, ballots_csv):
    return json.loads(_core.count_votes(_dump(config), ballots_csv))


def load_tally_csv(path):
    with open(path, encoding="utf-8") as fh:
        return json.loads(_core.parse_tally_csv(fh.read()))


def check_feasibility(config):
    return json.loads(_core.check_feasibility(_dump(config)))


def find_forced_candidates(config, tally):
    return _core.find_forced_candidates(_dump(config), _tally(tally))


def price_report(config, tally):
    return json.loads(_core.price_report(_dump(config), _tally(tally)))


def deficit_report(committee, config):
    return json.loads(_core.deficit_report(list(committee), _dump(config)))


def render_report(config, tally, format="json"):
    text = _core.render_report(_dump(config), _tally(tally), format)
    return json.loads(text) if format == "json" else text


def write_lp(config, tally):
    return _core.write_lp(_dump(config), _tally(tally))


def sha256_hex(data):
    return _core.sha256_hex(data.encode() if isinstance(data, str) else data)


def make_receipt(ballot_id, selections, salt_hex):
    """Returns (salt_hex, digest_hex)."""
    return _core.make_receipt(ballot_id, list(selections), salt_hex)


def whatif(config, tally, request):
    """Returns (http_status, body_dict) for a what-if request."""
    status, body = _core.whatif(_dump(config), _tally(tally), _dump(request))
    return status, json.loads(body)
