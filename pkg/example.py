#!/usr/bin/env python3
"""Example demonstrating alphainfo on a binary symmetric channel.

Run after installing:
    python3 -m pip install -e .
    python example.py
"""

from __future__ import annotations

import math

import alphainfo
from alphainfo.gallery import bsc_channel, bsc_sibson_mi

EPSILON = 0.25
joint = [[0.375, 0.125], [0.125, 0.375]]

# --- Measures ---
print("=== Measures ===")
for alpha in (0.0, 0.5, 1.0, 2.0, math.inf):
    value = alphainfo.sibson_mi(joint, alpha).value
    closed = bsc_sibson_mi(EPSILON, alpha)
    print(f"  I_{alpha:<4} sibson = {value:.6f}  closed form = {closed:.6f}")
print(f"  arimoto(2)        = {alphainfo.arimoto_mi(joint, 2):.6f}")
print(f"  csiszar(2)        = {alphainfo.csiszar_mi(joint, 2):.6f}")
print(f"  maximal leakage   = {alphainfo.maximal_leakage(joint):.6f}")

# --- Capacity ---
print("\n=== Capacity ===")
channel = bsc_channel(EPSILON)
for alpha in (0.5, 2.0, math.inf):
    result = alphainfo.sibson_capacity(channel, alpha)
    print(f"  C_{alpha:<4} = {result.value:.6f}  (gap {result.gap:.1e})")
print(f"  zero-error fb   = {alphainfo.zero_error_feedback_capacity(channel).value}")

# --- Bounds ---
print("\n=== Bounds ===")
error, _ = alphainfo.exact_map_error(joint)
print(f"  MAP error         = {error:.4f}")
lhs, rhs = alphainfo.dependence_bound(joint, [[True, False], [False, True]], 2)
print(f"  P(X = Y) = {lhs:.4f} <= {rhs:.4f}")
bound = alphainfo.gen_error_bound(1000, 0.05, 1.0, math.inf)
print(f"  generalization    = {bound.value:.4e}")
