"""Initial-condition factories for the standard scenarios."""

import numpy as np

from .contour import Chain, Curve, eta_grid


def circle(rho, center=(0.0, 0.0), M=128):
    """Closed circle of radius rho, positively oriented."""
    eta = eta_grid(M)
    nodes = np.column_stack(
        [center[0] + rho * np.cos(eta), center[1] + rho * np.sin(eta)]
    )
    return Curve(nodes)


def ellipse(a, b, center=(0.0, 0.0), M=128):
    """Closed ellipse with semi-axes a (horizontal) and b (vertical)."""
    eta = eta_grid(M)
    nodes = np.column_stack(
        [center[0] + a * np.cos(eta), center[1] + b * np.sin(eta)]
    )
    return Curve(nodes)


def front(height, amplitude=0.0, mode=1, M=128, phase=0.0):
    """Single horizontally periodic front gamma = (eta/(2 pi), height +
    amplitude cos(mode eta + phase)), winding 1."""
    eta = eta_grid(M)
    nodes = np.column_stack(
        [
            eta / (2.0 * np.pi),
            height + amplitude * np.cos(mode * eta + phase),
        ]
    )
    return Curve(nodes, winding=1)


def flat_layer(height, amplitude=0.0, mode=1, M=128, phase=0.0):
    """Two-boundary layer: fronts at +height and -height (both winding 1),
    optionally perturbed on the upper boundary."""
    return Chain(
        [
            front(height, amplitude, mode, M, phase),
            front(-height, 0.0, mode, M),
        ]
    )


def two_component(specs, M=128):
    """Chain from a list of geometry specs, each a dict with key 'kind' in
    {'circle', 'ellipse', 'front'} plus that factory's arguments."""
    makers = {"circle": circle, "ellipse": ellipse, "front": front}
    curves = []
    for spec in specs:
        spec = dict(spec)
        kind = spec.pop("kind")
        curves.append(makers[kind](M=M, **spec))
    return Chain(curves)
