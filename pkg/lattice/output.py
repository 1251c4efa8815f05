"""JSON documents written by lattice runs."""

import json

from utils.errors import ConfigurationError


def run_document(cfg, kind, order, matrices, residuals=None, unitarity_defect=None, extra=None):
    """Matrices as row-major [re, im] pairs plus a meta block"""
    meta = {
        "kind": kind,
        "order": order,
        "config_hash": cfg.config_hash(),
        "dimension": cfg.dimension,
        "steps": cfg.steps,
        "dt": cfg.step,
        "residuals": dict(residuals or {}),
        "unitarity_defect": unitarity_defect,
    }
    meta.update(extra or {})
    return {
        "config": cfg.to_json(),
        "matrices": {name: matrix.to_json()["matrix"] for name, matrix in matrices.items()},
        "meta": meta,
    }


def write_json(path, document):
    try:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(document, handle, sort_keys=True, separators=(",", ":"))
            handle.write("\n")
    except OSError as e:
        raise ConfigurationError(f"Cannot write output {path}: {e}")
