"""
CSV and JSON emission of sweep results.
"""
import io

from config.renderers import render_json

FLOAT_FORMAT = '.17g'


def format_float(value):
    return format(float(value), FLOAT_FORMAT)


def _metadata_lines(metadata, prefix=''):
    lines = []
    for key, value in metadata.items():
        if isinstance(value, dict):
            lines.extend(_metadata_lines(value, prefix=f'{prefix}{key}.'))
        else:
            lines.append(f'# {prefix}{key}: {value}')
    return lines


def series_to_csv(series):
    """
    CSV text: `#` config echo lines, header row, then one row per grid point.
    """
    out = io.StringIO()
    for line in _metadata_lines(series.metadata):
        out.write(line + '\n')
    out.write(','.join(series.header) + '\n')
    for row in series.rows:
        out.write(','.join(format_float(v) for v in row) + '\n')
    return out.getvalue()


def figure_to_csv(result):
    """One CSV block per curve, then one `t,scaled_time,absDiff` block per ent/sep group."""
    blocks = [f'# preset: {result.preset}\n']
    for label, series in result.curves:
        blocks.append(f'# curve: {label}\n' + series_to_csv(series))
    reference = dict(result.curves)
    for group, values in result.differences:
        series = reference[f'{group}_ent']
        out = io.StringIO()
        out.write(f'# difference: {group}\n')
        out.write('t,scaled_time,absDiff\n')
        for t, scaled, diff in zip(series.column('t'), series.column('scaled_time'), values):
            out.write(f'{format_float(t)},{format_float(scaled)},{format_float(diff)}\n')
        blocks.append(out.getvalue())
    return '\n'.join(blocks)


def to_json(payload):
    """Standard JSON wrapper around any to_dict() payload."""
    data = payload.to_dict() if hasattr(payload, 'to_dict') else payload
    return render_json(data) + '\n'


def write_output(text, path=None, stdout=None):
    """Write `text` to `path` if given, else to the command's stdout."""
    if path:
        with open(path, 'w', encoding='utf-8', newline='') as handle:
            handle.write(text)
        return
    stdout.write(text, ending='')
