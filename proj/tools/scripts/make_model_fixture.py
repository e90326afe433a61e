#!/usr/bin/env python3
# Copyright 2026 The hf0 Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Train a small band classifier on synthetic voices and freeze it as a test fixture.

Writes:
  tests/data/fixture_model.hf0w        HF0W weights
  tests/data/fixture_posteriors.bin    golden (input grid, posterior) pairs

Golden posteriors come from a float64 numpy forward pass over the weights as
read back from the HF0W file, not from torch.

Fixture file layout (little-endian):
  u32 count
  count x { f32 grid[5 * 320]; f32 posterior[9] }
"""

import argparse
import pathlib
import struct
import time

import numpy as np
import torch
from torch import nn

FS = 16000
FRAME = 800
HOP = 160
LAGS = 320
CONTEXT = 5
CHANNELS = 64
CLASSES = 9
EPS_ACF = 1e-10
BOUNDS = [50, 75, 100, 150, 200, 300, 400, 600, 800]
SPAN = FRAME + (CONTEXT - 1) * HOP


# ---------------------------------------------------------------- features


def frame_acf(frames):
    """Normalised zero-extended ACF, first LAGS lags, via FFT."""
    n = frames.shape[-1]
    spectrum = np.fft.rfft(frames, 2 * n, axis=-1)
    r = np.fft.irfft(spectrum * np.conj(spectrum), axis=-1)[..., :LAGS] / n
    return r / (r[..., :1] + EPS_ACF)


def context_grids(span):
    """(..., SPAN) samples -> (..., CONTEXT, LAGS) feature grid."""
    frames = np.stack([span[..., k * HOP:k * HOP + FRAME] for k in range(CONTEXT)], axis=-2)
    return frame_acf(frames)


# ------------------------------------------------------------ synthetic data


def voice(rng, f0, n, alpha=None):
    t = np.arange(n) / FS
    alpha = rng.uniform(0.5, 2.0) if alpha is None else alpha
    depth = rng.uniform(0.0, 0.02)
    rate = rng.uniform(3.0, 7.0)
    inst = f0 * (1.0 + depth * np.sin(2 * np.pi * rate * t + rng.uniform(0, 2 * np.pi)))
    phase = 2 * np.pi * np.cumsum(inst) / FS
    x = np.zeros(n)
    k = 1
    while k * f0 * (1 + depth) < 4000:
        gain = k ** -alpha * rng.uniform(0.5, 1.5)
        x += gain * np.sin(k * phase + rng.uniform(0, 2 * np.pi))
        k += 1
    x *= rng.uniform(0.05, 0.8) / (np.sqrt(np.mean(x ** 2)) + 1e-12)
    snr = rng.uniform(10.0, 40.0)
    x += rng.standard_normal(n) * np.sqrt(np.mean(x ** 2)) * 10 ** (-snr / 20)
    return x


def unvoiced(rng, n):
    kind = rng.integers(3)
    if kind == 0:
        return np.zeros(n)
    noise = rng.standard_normal(n) * rng.uniform(1e-3, 0.3)
    if kind == 1:
        return noise
    # coloured noise: one-pole smoothing
    a = rng.uniform(0.5, 0.98)
    y = np.empty(n)
    acc = 0.0
    for i, v in enumerate(noise):
        acc = a * acc + (1 - a) * v
        y[i] = acc
    return y


def make_examples(rng, per_class):
    spans, labels = [], []
    for c in range(CLASSES):
        for _ in range(per_class):
            if c < 8:
                f0 = np.exp(rng.uniform(np.log(BOUNDS[c]), np.log(BOUNDS[c + 1])))
                spans.append(voice(rng, f0, SPAN))
            else:
                spans.append(unvoiced(rng, SPAN))
            labels.append(c)
    return context_grids(np.array(spans)), np.array(labels)


# ------------------------------------------------------------------- model


class BandNet(nn.Module):
    def __init__(self):
        super().__init__()
        self.conv1 = nn.Conv2d(1, CHANNELS, 3, padding=1)
        self.bn1 = nn.BatchNorm2d(CHANNELS)
        self.conv2 = nn.Conv2d(CHANNELS, CHANNELS, 3, padding=1)
        self.bn2 = nn.BatchNorm2d(CHANNELS)
        self.drop = nn.Dropout(0.2)
        self.dense = nn.Linear((CONTEXT // 2) * (LAGS // 2) * CHANNELS, CLASSES)

    def forward(self, x):
        h = self.drop(self.bn1(torch.relu(self.conv1(x))))
        h = nn.functional.max_pool2d(h, 2)
        h = self.drop(self.bn2(torch.relu(self.conv2(h))))
        # flatten in (row, lag, channel) order
        return self.dense(h.permute(0, 2, 3, 1).flatten(1))


def train(model, x, y, epochs, seed):
    gen = torch.Generator().manual_seed(seed)
    opt = torch.optim.SGD(model.parameters(), lr=1e-3, momentum=0.9)
    xt = torch.tensor(x, dtype=torch.float32).unsqueeze(1)
    yt = torch.tensor(y)
    for epoch in range(epochs):
        model.train()
        order = torch.randperm(len(yt), generator=gen)
        total = 0.0
        for i in range(0, len(order), 64):
            idx = order[i:i + 64]
            opt.zero_grad()
            loss = nn.functional.cross_entropy(model(xt[idx]), yt[idx])
            loss.backward()
            opt.step()
            total += loss.item() * len(idx)
        print(f"epoch {epoch + 1}: loss {total / len(yt):.4f}", flush=True)


# ------------------------------------------------------------- HF0W export


def export(model, path):
    sd = {k: v.detach().double().numpy() for k, v in model.state_dict().items()}
    tensors = [
        ("conv1.kernel", sd["conv1.weight"].transpose(2, 3, 1, 0)),
        ("conv1.bias", sd["conv1.bias"]),
    ]
    for bn in ("bn1", "bn2"):
        if bn == "bn2":
            tensors += [
                ("conv2.kernel", sd["conv2.weight"].transpose(2, 3, 1, 0)),
                ("conv2.bias", sd["conv2.bias"]),
            ]
        tensors += [
            (f"{bn}.gamma", sd[f"{bn}.weight"]),
            (f"{bn}.beta", sd[f"{bn}.bias"]),
            (f"{bn}.mean", sd[f"{bn}.running_mean"]),
            (f"{bn}.var", sd[f"{bn}.running_var"]),
            (f"{bn}.eps", np.array([getattr(model, bn).eps])),
        ]
    tensors += [("dense.weight", sd["dense.weight"].T), ("dense.bias", sd["dense.bias"])]

    with open(path, "wb") as f:
        f.write(b"HF0W" + struct.pack("<4I", 1, LAGS, CONTEXT, len(tensors)))
        for name, arr in tensors:
            arr = np.ascontiguousarray(arr, dtype="<f4")
            f.write(struct.pack("<H", len(name)) + name.encode())
            f.write(struct.pack("<B", arr.ndim) + struct.pack(f"<{arr.ndim}I", *arr.shape))
            f.write(arr.tobytes())


def read_hf0w(path):
    data = pathlib.Path(path).read_bytes()
    assert data[:4] == b"HF0W"
    _, lags, context, count = struct.unpack_from("<4I", data, 4)
    pos = 20
    out = {}
    for _ in range(count):
        (n,) = struct.unpack_from("<H", data, pos)
        name = data[pos + 2:pos + 2 + n].decode()
        pos += 2 + n
        (rank,) = struct.unpack_from("<B", data, pos)
        shape = struct.unpack_from(f"<{rank}I", data, pos + 1)
        pos += 1 + 4 * rank
        size = int(np.prod(shape))
        out[name] = np.frombuffer(data, "<f4", size, pos).reshape(shape).astype(np.float64)
        pos += 4 * size
    assert pos == len(data)
    return out


# -------------------------------------------------- independent forward pass


def np_conv_same(x, kernel, bias):
    """x: (H, W, Cin); kernel: (3, 3, Cin, Cout)."""
    h, w, _ = x.shape
    p = np.pad(x, ((1, 1), (1, 1), (0, 0)))
    y = np.zeros((h, w, kernel.shape[3]))
    for dy in range(3):
        for dx in range(3):
            y += p[dy:dy + h, dx:dx + w, :] @ kernel[dy, dx]
    return y + bias


def np_bn(x, t, name):
    return (x - t[f"{name}.mean"]) / np.sqrt(t[f"{name}.var"] + t[f"{name}.eps"][0]) \
        * t[f"{name}.gamma"] + t[f"{name}.beta"]


def np_forward(t, grid):
    h = np_conv_same(grid[:, :, None], t["conv1.kernel"], t["conv1.bias"])
    h = np_bn(np.maximum(h, 0), t, "bn1")
    hh, ww = h.shape[0] // 2 * 2, h.shape[1] // 2 * 2
    h = h[:hh, :ww].reshape(hh // 2, 2, ww // 2, 2, -1).max(axis=(1, 3))
    h = np_conv_same(h, t["conv2.kernel"], t["conv2.bias"])
    h = np_bn(np.maximum(h, 0), t, "bn2")
    z = h.reshape(-1) @ t["dense.weight"] + t["dense.bias"]
    z = np.exp(z - z.max())
    return z / z.sum()


# --------------------------------------------------------------------- main


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    root = pathlib.Path(__file__).resolve().parents[2]
    parser.add_argument("--out-dir", type=pathlib.Path, default=root / "tests" / "data")
    parser.add_argument("--per-class", type=int, default=1400)
    parser.add_argument("--epochs", type=int, default=12)
    parser.add_argument("--seed", type=int, default=2026)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    torch.manual_seed(args.seed)
    torch.use_deterministic_algorithms(True)

    start = time.time()
    x_train, y_train = make_examples(rng, args.per_class)
    x_hold, y_hold = make_examples(rng, 200)
    print(f"data: {len(y_train)} train, {len(y_hold)} held out ({time.time() - start:.1f} s)")

    model = BandNet()
    train(model, x_train, y_train, args.epochs, args.seed)
    model.eval()
    with torch.no_grad():
        pred = model(torch.tensor(x_hold, dtype=torch.float32).unsqueeze(1)).argmax(1).numpy()
    print(f"held-out accuracy: {np.mean(pred == y_hold):.4f}")

    args.out_dir.mkdir(parents=True, exist_ok=True)
    model_path = args.out_dir / "fixture_model.hf0w"
    export(model, model_path)
    weights = read_hf0w(model_path)

    # 250 Hz voice, 1 s, 1/k harmonics: fraction of interior frames in s5
    n = FS
    t = np.arange(n) / FS
    sig = sum(np.sin(2 * np.pi * 250 * k * t) / k for k in range(1, 16)) * 0.3
    pad = np.concatenate([sig, np.zeros(FRAME)])
    frames = np.stack([pad[i * HOP:i * HOP + FRAME] for i in range(-(-n // HOP))])
    feats = frame_acf(frames)
    labels = []
    for i in range(len(frames)):
        rows = [feats[min(max(i + d, 0), len(frames) - 1)] for d in range(-2, 3)]
        labels.append(int(np.argmax(np_forward(weights, np.stack(rows)))))
    interior = labels[2:-7]
    print(f"250 Hz voice: {np.mean(np.array(interior) == 4):.3f} of interior frames labelled s5")

    grids = [x_hold[i] for c in range(CLASSES) for i in np.flatnonzero(y_hold == c)[:2]]
    grids += [rng.standard_normal((CONTEXT, LAGS)) * 0.5 for _ in range(4)]
    grids += [np.zeros((CONTEXT, LAGS)), np.ones((CONTEXT, LAGS))]
    with open(args.out_dir / "fixture_posteriors.bin", "wb") as f:
        f.write(struct.pack("<I", len(grids)))
        for g in grids:
            g32 = np.asarray(g, dtype="<f4")
            post = np_forward(weights, g32.astype(np.float64))
            f.write(g32.tobytes() + post.astype("<f4").tobytes())
    print(f"wrote {model_path} and {len(grids)} golden posteriors ({time.time() - start:.1f} s)")


if __name__ == "__main__":
    main()
