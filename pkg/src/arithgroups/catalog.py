"""Built-in field and group aliases plus the on-disk catalog formats.

Field catalog records are line-oriented key=value blocks separated by blank
lines; generator files hold one matrix per block with exact rational entries.
"""

from fractions import Fraction

from .congruence import SIntegerGroup
from .matrix import Mat
from .numberfield import NumberField
from .rings import QQ

_BUILTIN_FIELD_RECORDS = {
    # name: (min poly, constant first; galois; power basis maximal)
    "qi": ((1, 0, 1), True, True),
    "qsqrt2": ((-2, 0, 1), True, True),
    "qcbrt2": ((-2, 0, 0, 1), False, True),
    "zeta5": ((1, 1, 1, 1, 1), True, True),
}

_BUILTIN_GROUPS = {
    "sl2z": [[[1, 1], [0, 1]], [[0, -1], [1, 0]]],
    "sanov": [[[1, 2], [0, 1]], [[1, 0], [2, 1]]],
    "triangular": [[[1, 1], [0, 1]], [[1, 2], [0, 1]]],
    "transvection": [[[1, 1], [0, 1]]],
}


def builtin_field(name):
    coeffs, galois, maximal = _BUILTIN_FIELD_RECORDS[name]
    return NumberField(coeffs, name=name, galois=galois, power_basis_maximal=maximal)


def field_aliases():
    return sorted(_BUILTIN_FIELD_RECORDS)


def group_aliases():
    return sorted(_BUILTIN_GROUPS)


def builtin_group(name):
    gens = [Mat(QQ, rows) for rows in _BUILTIN_GROUPS[name]]
    return SIntegerGroup(gens, label=name)


def load_field(spec, catalog_path=None):
    """Resolve a field alias or read it from a catalog file."""
    if catalog_path:
        catalog = read_field_catalog(catalog_path)
        if spec in catalog:
            return catalog[spec]
    if spec in _BUILTIN_FIELD_RECORDS:
        return builtin_field(spec)
    raise KeyError(f"unknown field {spec!r}; aliases: {', '.join(field_aliases())}")


def load_group(spec):
    """Resolve a group alias or read generators from a file."""
    if spec in _BUILTIN_GROUPS:
        return builtin_group(spec)
    import os

    if os.path.exists(spec):
        label = os.path.splitext(os.path.basename(spec))[0]
        return SIntegerGroup(read_generator_file(spec), label=label)
    raise KeyError(f"unknown group {spec!r}; aliases: {', '.join(group_aliases())}")


def read_field_catalog(path):
    """Parse a key=value field catalog; records separated by blank lines."""
    fields = {}
    record = {}

    def flush():
        if not record:
            return
        name = record["name"]
        coeffs = tuple(int(c) for c in record["minpoly"].split(","))
        fields[name] = NumberField(
            coeffs,
            name=name,
            galois=_parse_bool(record.get("galois", "false")),
            power_basis_maximal=_parse_bool(record.get("maximal", "false")),
        )

    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                if not line:
                    flush()
                    record = {}
                continue
            key, _, val = line.partition("=")
            record[key.strip()] = val.strip()
    flush()
    return fields


def write_field_catalog(fields, path):
    blocks = []
    for K in fields:
        blocks.append("\n".join([
            f"name={K.name}",
            "minpoly=" + ",".join(str(c) for c in K.min_poly.coeffs),
            f"galois={'true' if K.galois else 'false'}",
            f"maximal={'true' if K.power_basis_maximal else 'false'}",
        ]))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n\n".join(blocks) + "\n")


def _parse_bool(text):
    if text.lower() in ("true", "yes", "1"):
        return True
    if text.lower() in ("false", "no", "0"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def read_generator_file(path):
    """One matrix per block, rows of whitespace-separated rationals 'a/b'."""
    mats = []
    block = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if line.startswith("#"):
                continue
            if not line:
                if block:
                    mats.append(Mat(QQ, block))
                    block = []
                continue
            block.append([Fraction(tok) for tok in line.split()])
    if block:
        mats.append(Mat(QQ, block))
    if not mats:
        raise ValueError(f"no matrices found in {path}")
    return mats


def write_generator_file(gens, path):
    blocks = []
    for g in gens:
        blocks.append("\n".join(
            " ".join(str(Fraction(x)) for x in row) for row in g.rows
        ))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n\n".join(blocks) + "\n")
