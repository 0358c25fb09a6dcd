#!/usr/bin/env python3
"""
Runtime configuration for the upper ideal graph toolkit.
Values come from the environment (or a local .env file) with safe defaults.
"""

import os
import sys
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(float(raw))
    except ValueError:
        print(f"⚠️ Ignoring non-numeric {name}={raw!r}, using {default}", file=sys.stderr)
        return default


# Stochastic embedding search
SEED = _int_env("UPPERIDEAL_SEED", 0)
RESTARTS = _int_env("UPPERIDEAL_RESTARTS", 64)
STEPS = _int_env("UPPERIDEAL_STEPS", 20000)

# Exhaustive rotation search is attempted below this many rotation systems
EXHAUSTIVE_LIMIT = _int_env("UPPERIDEAL_EXHAUSTIVE_LIMIT", 10**8)

# Ring-graph recognition enumerates chordless cycles
CYCLE_CAP = _int_env("UPPERIDEAL_CYCLE_CAP", 10**6)
RING_GRAPH_MAX_VERTICES = _int_env("UPPERIDEAL_RING_GRAPH_MAX_VERTICES", 40)

BRUTE_FORCE_MAX_VERTICES = _int_env("UPPERIDEAL_BRUTE_FORCE_MAX_VERTICES", 40)
EXACT_CLIQUE_MAX_VERTICES = _int_env("UPPERIDEAL_EXACT_CLIQUE_MAX_VERTICES", 64)
BLOCK_DETAIL_MAX_VERTICES = _int_env("UPPERIDEAL_BLOCK_DETAIL_MAX_VERTICES", 64)
TRACE_MAX_EDGES = _int_env("UPPERIDEAL_TRACE_MAX_EDGES", 2000)

JOBS = _int_env("UPPERIDEAL_JOBS", 1)
CERT_DIR = os.getenv("UPPERIDEAL_CERT_DIR", os.path.join(os.path.dirname(os.path.abspath(__file__)), "certificates"))
VERBOSE = os.getenv("UPPERIDEAL_VERBOSE", "1") not in ("0", "false", "no", "")


def say(message: str) -> None:
    """Progress line on stderr; stdout stays reserved for command output."""
    if VERBOSE:
        print(message, file=sys.stderr, flush=True)
