# Copyright 2026 The spatialav Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Spatial audio-visual metrics, stereo rendering and DDPM utilities."""

import json as _json

from spatialav._core import (
        ArgumentError,
        ContractError,
        DataError,
        FormatError,
        IoError,
        Track,
        UsageError,
        ValidationError,
        e_l1,
        frechet_distance,
        interpolate_envelope,
        load_embeddings,
        load_track,
        localize,
        noise_schedule,
        oracle_round_trip,
        parse_track,
        read_wav,
        render_stereo,
        rms_envelope,
        save_embeddings,
        spatial_av_align,
        write_wav,
)
from spatialav import _core

__version__ = "0.1.0"


def batch_evaluate(manifest, tolerance=0.15, threshold_db=-40.0, parallelism=0):
    """Evaluates every clip in a JSONL manifest.

    Returns a dict with per-clip results under "clips" and pooled scores under
    "aggregate".
    """
    text = _core._batch_evaluate_json(str(manifest), tolerance, threshold_db,
                                      parallelism)
    return _json.loads(text)


__all__ = [name for name in dir() if not name.startswith("_")]
