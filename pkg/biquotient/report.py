import json

import numpy as np
import pandas as pd

from biquotient.algebra import LieVector, Quaternion, check_special_unitary
from biquotient.cheeger import validate_witness
from biquotient.label_map import Labels

import logging

log = logging.getLogger(__name__)

# largest integer a float-bound JSON consumer reads exactly
MAX_EXACT_INT = 2 ** 53


class WitnessValidationError(ValueError):
    """A witness in a report fails re-validation."""


def encode(value):
    """Converts results and witness data to JSON-ready values.

    Complex arrays become nested [re, im] pairs in row-major
    order, integers beyond 2^53 become strings.
    """
    if isinstance(value, dict):
        return {str(key): encode(val) for key, val in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(val) for val in value]
    if isinstance(value, LieVector):
        return encode(value.data)
    if isinstance(value, Quaternion):
        return encode(value.as_array())
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            pairs = np.stack([value.real, value.imag], axis=-1)
            return pairs.tolist()
        return value.tolist()
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        value = int(value)
        return str(value) if abs(value) > MAX_EXACT_INT else value
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def decode_complex(data):
    """Inverse of encode for complex arrays."""
    arr = np.asarray(data, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


def encode_witness(witness):
    return encode(
        {
            'family': witness.family,
            'params': witness.params,
            'direction': witness.direction,
            'lam': witness.lam,
            'point': witness.point,
            'X': witness.X,
            'Y': witness.Y,
            'extra': witness.extra,
            'valid': witness.valid,
        }
    )


def revalidate(data, bracket_tol=1e-9, horiz_tol=1e-8):
    """Re-runs the witness checks on a decoded witness.

    Returns:

        valid: boolean
    """
    # imports kept local, the family modules import this one's siblings
    from biquotient.bazaikin import BazaikinSpace
    from biquotient.eschenburg import EschenburgSpace
    from biquotient.torus_s3s3 import TorusAction, TorusQuotient

    family = data.get('family')
    params = data.get('params', {})
    lam = float(data.get('lam', 0.5))
    try:
        if family == 'torus':
            X = LieVector(np.asarray(data['X'], dtype=float))
            Y = LieVector(np.asarray(data['Y'], dtype=float))
            point = np.asarray(data['point'], dtype=float)
            q1 = Quaternion.from_array(point[0])
            q2 = Quaternion.from_array(point[1])
            if not (q1.is_unit() and q2.is_unit()):
                return False
            quotient = TorusQuotient(
                TorusAction(params['kind'], params['a'], params['b'], params['c']),
                lam=lam,
                log_level=logging.getLogger().level,
            )
            constraints = quotient.vertical_space(q1, q2)
            ctx = quotient.ctx
        else:
            X = LieVector(decode_complex(data['X']))
            Y = LieVector(decode_complex(data['Y']))
            A = decode_complex(data['point'])
            if family == 'eschenburg':
                check_special_unitary(A, n=3)
                space = EschenburgSpace(
                    params['p'],
                    params['q'],
                    lam=lam,
                    log_level=logging.getLogger().level,
                )
                constraints = [space.vertical_vector(A)]
            elif family == 'bazaikin':
                check_special_unitary(A, n=5)
                space = BazaikinSpace(
                    params['q'], lam=lam, log_level=logging.getLogger().level
                )
                constraints = space.vertical_space(A)
            else:
                return False
            ctx = space.ctx
    except (KeyError, TypeError, ValueError, IndexError):
        return False
    return validate_witness(
        ctx, X, Y, constraints, bracket_tol=bracket_tol, horiz_tol=horiz_tol
    )


class Report(object):
    """Outcome of a command, ready for JSON, CSV or text output.

    Parameters:

        command: dict
            Echo of the command and its parameters
        config: dict
            Echo of the run configuration
        results: list of dict
            One row per item
        witnesses: list of dict
            Encoded witnesses of the zero planes found
        summary: dict
            Aggregates and soundness failure counts
        timing: dict
            Start time and elapsed seconds, excluded from the
            rendered summaries
    """

    def __init__(
        self, command, config, results, witnesses=None, summary=None, timing=None
    ):
        # canonical JSON values, so that a reloaded report renders
        # identically
        self.command = self._canonical(command)
        self.config = self._canonical(config)
        self.results = self._canonical(results)
        self.witnesses = self._canonical(witnesses or [])
        self.summary = self._canonical(summary or {})
        self.timing = self._canonical(timing or {})
        self.labels = Labels(log_level=logging.getLogger().level).set_report()

    @staticmethod
    def _canonical(value):
        return json.loads(json.dumps(encode(value), sort_keys=True))

    @property
    def failed(self):
        return int(self.summary.get('failures', 0)) > 0

    def to_dict(self):
        return {
            'command': self.command,
            'config': self.config,
            'results': self.results,
            'witnesses': self.witnesses,
            'summary': self.summary,
            'timing': self.timing,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text, bracket_tol=None, horiz_tol=None):
        """Loads a report and re-validates every witness.

        Raises:

            WitnessValidationError for a witness that fails
            the checks, ValueError for malformed input
        """
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            msg = "Report is not valid JSON: {}.".format(err)
            log.error(msg)
            raise ValueError(msg)
        for key in ('command', 'config', 'results', 'witnesses'):
            if key not in data:
                msg = "Report lacks the field {}.".format(key)
                log.error(msg)
                raise ValueError(msg)
        config = data['config']
        bracket_tol = bracket_tol or float(config.get('bracket_tol', 1e-9))
        horiz_tol = horiz_tol or float(config.get('horiz_tol', 1e-8))
        for idx, witness in enumerate(data['witnesses']):
            if not revalidate(witness, bracket_tol=bracket_tol, horiz_tol=horiz_tol):
                msg = "Witness {} ({}, {}) fails re-validation.".format(
                    idx, witness.get('family'), witness.get('params')
                )
                log.error(msg)
                raise WitnessValidationError(msg)
        return cls(
            data['command'],
            config,
            data['results'],
            data['witnesses'],
            data.get('summary'),
            data.get('timing'),
        )

    def to_frame(self):
        """Results table with the documented column order first,
        remaining columns sorted after it.
        """
        frame = pd.DataFrame(self.results)
        order = self.labels['columns'].get(self.command.get('command'), [])
        first = [col for col in order if col in frame.columns]
        rest = sorted(col for col in frame.columns if col not in first)
        return frame[first + rest] if len(frame.columns) else frame

    def render(self, fmt="json"):
        """Report as json, csv or text.

        The csv and text forms omit timing.
        """
        if fmt == "json":
            return self.to_json()
        frame = self.to_frame()
        if fmt == "csv":
            return frame.to_csv(index=False)
        if fmt == "text":
            lines = [
                "command: {}".format(json.dumps(self.command, sort_keys=True)),
                "config: {}".format(json.dumps(self.config, sort_keys=True)),
                "summary: {}".format(json.dumps(self.summary, sort_keys=True)),
                "witnesses: {}".format(len(self.witnesses)),
                "",
                frame.to_string(index=False) if len(frame) else "(no rows)",
            ]
            return "\n".join(lines) + "\n"
        msg = "Unknown output format {}.".format(fmt)
        log.error(msg)
        raise ValueError(msg)
