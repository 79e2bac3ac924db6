import json
import math
from typing import Dict

import numpy as np


def convert_json(obj):
    """ Convert obj to a version which can be serialized with JSON. """
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    elif isinstance(obj, (np.integer,)):
        return int(obj)
    elif isinstance(obj, (float, np.floating)):
        return float(obj)
    elif isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    elif isinstance(obj, np.ndarray):
        return [convert_json(x) for x in obj.tolist()]
    elif is_json_serializable(obj):
        return obj
    else:
        if isinstance(obj, dict):
            return {convert_json(k): convert_json(v)
                    for k, v in obj.items()}

        elif isinstance(obj, (tuple, list)):
            return [convert_json(x) for x in obj]

        elif hasattr(obj, '__name__') and not ('lambda' in obj.__name__):
            return convert_json(obj.__name__)

        elif hasattr(obj, '__dict__') and obj.__dict__:
            obj_dict = {convert_json(k): convert_json(v)
                        for k, v in obj.__dict__.items()}
            return {str(obj): obj_dict}

        return str(obj)


def is_json_serializable(v):
    try:
        json.dumps(v, allow_nan=False)
        return True
    except (TypeError, ValueError, OverflowError):
        return False


def _encode_float(x):
    # Infinity/NaN are not JSON; keep them readable as strings
    if isinstance(x, float) and not math.isfinite(x):
        return repr(x)
    return x


def format_record(record: Dict) -> str:
    """
    One flat record as a JSON document. Keys keep the insertion order of ``record``, which is the
    documented order of each record type. Floats use the shortest round-trip repr, so a record
    formatted twice from the same values is byte-identical.
    """
    record = {key: _encode_float(val) if not isinstance(val, list) else [_encode_float(x) for x in val]
              for key, val in convert_json(record).items()}
    return json.dumps(record, indent=2, allow_nan=False) + '\n'


def dump_record(path, record: Dict):
    with open(path, 'w', encoding='utf-8') as f:
        f.write(format_record(record))


def load_record(path) -> Dict:
    with open(path, 'r', encoding='utf-8') as f:
        record = json.load(f)

    def decode(x):
        if x in ('inf', '-inf', 'nan'):
            return float(x)
        return x

    return {key: [decode(x) for x in val] if isinstance(val, list) else decode(val)
            for key, val in record.items()}
