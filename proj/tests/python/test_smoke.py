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

import json
import math

import numpy as np
import pytest

import spatialav

HEADER = '{"frame_width":1280,"frame_height":720,"fps":30}\n'


def sweep_track(seconds=2.0):
    lines = [HEADER]
    frames = int(seconds * 30) + 1
    for k in range(frames):
        cx = 200 + 880 * k / (frames - 1)
        lines.append(json.dumps({"frame": k, "box": [cx - 40, 200, cx + 40, 600]}) + "\n")
    return "".join(lines)


def bursts(seconds, rate=44100, seed=0):
    rng = np.random.default_rng(seed)
    out = np.zeros(int(seconds * rate), dtype=np.float32)
    step = int(0.35 * rate)
    for start in range(step // 2, out.size, step):
        n = min(rate // 8, out.size - start)
        decay = np.exp(-np.arange(n) / (0.03 * rate))
        out[start:start + n] = 0.4 * decay * rng.standard_normal(n)
    return np.clip(out, -1, 1)


def test_envelope_matches_numpy():
    x = np.random.default_rng(1).uniform(-1, 1, 5000).astype(np.float32)
    env = spatialav.rms_envelope(x)
    assert env.shape == (math.ceil(5000 / 128),)
    padded = np.concatenate([np.zeros(256), x.astype(np.float64), np.zeros(512)])
    oracle = [math.sqrt(np.mean(padded[i * 128:i * 128 + 512] ** 2))
                        for i in range(env.size)]
    np.testing.assert_allclose(env, oracle, atol=1e-6)
    assert spatialav.e_l1(env, env) == 0.0
    assert spatialav.interpolate_envelope(env, 1000).shape == (2, 1000)


def test_frechet_one_dimensional():
    rng = np.random.default_rng(2)
    a = rng.standard_normal((4000, 1)).astype(np.float32)
    assert spatialav.frechet_distance(a, a) == pytest.approx(0.0, abs=1e-9)
    assert spatialav.frechet_distance(a, a + 3) == pytest.approx(9.0, rel=1e-5)


def test_render_then_align():
    track = spatialav.parse_track(sweep_track())
    assert len(track) == 61
    audio = spatialav.render_stereo(bursts(2.0), track)
    assert audio.shape == (2, 88200)
    report = spatialav.spatial_av_align(audio, track)
    assert report["tp"] + report["fn"] > 0
    assert report["score"] >= 0.9
    mirrored = spatialav.spatial_av_align(audio[::-1].copy(), track)
    assert mirrored["score"] < report["score"]
    active, direction = spatialav.localize(audio)
    assert np.all(np.isnan(direction[~active]))


def test_wav_round_trip(tmp_path):
    words = np.random.default_rng(3).integers(-32768, 32768, (2, 1000))
    audio = (words / 32768).astype(np.float32)
    spatialav.write_wav(tmp_path / "a.wav", audio, 44100)
    back, rate = spatialav.read_wav(tmp_path / "a.wav")
    assert rate == 44100
    np.testing.assert_array_equal(back, audio)


def test_errors_map_to_python_exceptions(tmp_path):
    with pytest.raises(spatialav.ValidationError, match="line 2"):
        spatialav.parse_track(HEADER + '{"frame":0,"box":[50,0,10,10]}\n')
    with pytest.raises(OSError):
        spatialav.read_wav(tmp_path / "missing.wav")
    with pytest.raises(ValueError):
        spatialav.e_l1(np.ones(3, np.float32), np.ones(4, np.float32))


def test_diffusion():
    alphas, alpha_bars = spatialav.noise_schedule("linear", 1000)
    assert alpha_bars[-1] == pytest.approx(4.035829765375676e-05, rel=1e-9)
    assert spatialav.oracle_round_trip(50, 16, seed=7) < 1e-3


def test_batch(tmp_path):
    (tmp_path / "t.jsonl").write_text(sweep_track())
    track = spatialav.load_track(tmp_path / "t.jsonl")
    spatialav.write_wav(tmp_path / "a.wav",
                                            spatialav.render_stereo(bursts(2.0, seed=4), track))
    (tmp_path / "m.jsonl").write_text(
            '{"audio":"a.wav","track":"t.jsonl","ref_audio":"a.wav"}\n')
    result = spatialav.batch_evaluate(tmp_path / "m.jsonl", parallelism=1)
    assert len(result["clips"]) == 1
    assert result["aggregate"]["av_align"] >= 0.9
    assert result["aggregate"]["mean_e_l1"] == 0.0
    with pytest.raises(spatialav.DataError):
        (tmp_path / "bad.jsonl").write_text('{"audio":"x.wav","track":"t.jsonl"}\n')
        spatialav.batch_evaluate(tmp_path / "bad.jsonl")
