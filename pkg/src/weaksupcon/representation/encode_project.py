"""
Shared encoder and projection head.

Parameters live in an ordered dict of Tensors named "encoder.<k>.weight",
"encoder.<k>.bias", "projection.<k>.weight" and "projection.<k>.bias".
Weights are stored fan_in x fan_out so a layer is x @ W + b.
"""

import numpy as np

from weaksupcon.common.errors import ArchitectureError, ShapeError
from weaksupcon.numcore import ops
from weaksupcon.numcore.tensor import Tensor, as_tensor


def _dense_init(prefix, fan_in, fan_out, gen):
    bound = 1.0 / np.sqrt(fan_in)
    return {
        f"{prefix}.weight": Tensor(gen.uniform(-bound, bound, size=(fan_in, fan_out)), requires_grad=True, name=f"{prefix}.weight"),
        f"{prefix}.bias": Tensor(gen.uniform(-bound, bound, size=(1, fan_out)), requires_grad=True, name=f"{prefix}.bias"),
    }


def init_encoder_projection(enc, proj, rng):
    """
    Scaled-uniform fan-in initialization, U(-1/sqrt(fan_in), 1/sqrt(fan_in)).

    Args:
        enc (EncoderSpec): Encoder widths
        proj (ProjectionSpec): Projection widths
        rng (Rng): Init stream

    Returns:
        dict: Parameter name -> trainable Tensor
    """
    gen = rng.generator
    params = {}
    widths = enc.layer_widths
    for k in range(len(widths) - 1):
        params.update(_dense_init(f"encoder.{k}", widths[k], widths[k + 1], gen))
    proj_widths = (widths[-1], proj.hidden_width, proj.output_width)
    for k in range(2):
        params.update(_dense_init(f"projection.{k}", proj_widths[k], proj_widths[k + 1], gen))
    return params


def architecture_of(enc, proj):
    return {
        "model": "encoder_projection",
        "encoder_widths": list(enc.layer_widths),
        "activation": enc.activation,
        "projection_widths": [proj.hidden_width, proj.output_width],
    }


def specs_from_architecture(architecture):
    from weaksupcon.representation.specs import EncoderSpec, ProjectionSpec

    if architecture.get("model") != "encoder_projection":
        raise ArchitectureError(f"expected an encoder_projection checkpoint, got {architecture.get('model')!r}", architecture=architecture)
    hidden, output = architecture["projection_widths"]
    return (
        EncoderSpec(layer_widths=tuple(architecture["encoder_widths"]), activation=architecture["activation"]),
        ProjectionSpec(hidden_width=hidden, output_width=output),
    )


def _dense(x, params, prefix):
    return ops.add(ops.matmul(x, params[f"{prefix}.weight"]), params[f"{prefix}.bias"])


def _activate(x, name):
    return ops.relu(x) if name == "relu" else ops.tanh(x)


def encode(x, params, enc):
    x = as_tensor(x)
    if x.data.ndim != 2 or x.shape[1] != enc.layer_widths[0]:
        raise ShapeError("encode", x.shape, (None, enc.layer_widths[0]))
    h = x
    last = len(enc.layer_widths) - 2
    for k in range(last + 1):
        h = _dense(h, params, f"encoder.{k}")
        if k < last:
            h = _activate(h, enc.activation)
    return h


def project(h, params):
    return ops.l2_normalize(_dense(ops.relu(_dense(h, params, "projection.0")), params, "projection.1"))


def encode_project(x, params, enc, proj):
    """
    Encoder embeddings and unit-norm projections.

    Args:
        x (ndarray | Tensor): n x d_raw inputs
        params (dict): Parameters from init_encoder_projection
        enc (EncoderSpec): Encoder widths and activation
        proj (ProjectionSpec): Projection widths

    Returns:
        tuple: (h, z) Tensors; the embedding h is the output of the last
            encoder layer (no activation), z = l2_normalize(projection(h))
    """
    expected = enc.layer_widths[-1], proj.output_width
    if params["projection.1.weight"].shape[1] != expected[1]:
        raise ShapeError("encode_project", params["projection.1.weight"].shape, expected)
    h = encode(x, params, enc)
    return h, project(h, params)
