"""Simulation and gradient-based quantum optimal control of one-dimensional
ultracold-atom systems: Gross-Pitaevskii condensates, Bose-Hubbard lattices,
two interacting particles and few-mode models, with GRAPE, GROUP and
dressed-GROUP optimizers."""

import json as _json

from ._core import *  # noqa: F401,F403
from . import _core as _c

__version__ = _c.__version__


def scenario_defaults(scenario):
    """Default parameter tree of a bundled scenario, as a dict."""
    return _json.loads(_c.scenario_defaults_json(scenario))


def run_scenario(config, out_dir="results"):
    """Run a scenario from a config dict (or JSON string); returns a summary
    dict and writes result files under out_dir."""
    if isinstance(config, str):
        config = _json.loads(config)
    if "scenario" not in config:
        raise ValueError("config needs a 'scenario' key")
    document = {
        "scenario": config["scenario"],
        "overrides": config.get("overrides", {}),
    }
    if "seed" in config:
        document["seed"] = config["seed"]
    return _json.loads(_c.run_scenario_json(_json.dumps(document), str(out_dir)))
