"""
Table Formatter - renders coefficient tables and verification reports as
text, JSON or CSV. Output is deterministic: canonical fraction text, fixed
row order, no timestamps.
"""

import csv
import io
import json

from algebra.scalars import ParamScalar, format_fraction
from utils.logger import get_logger


def scalar_text(value) -> str:
    if isinstance(value, ParamScalar):
        return str(value)
    return format_fraction(value)


def scalar_json(value):
    if isinstance(value, ParamScalar):
        return value.to_json()
    return ParamScalar.const(value).to_json()


def base_class_rows(base):
    """(monomial text, coefficient) rows of a BaseClass"""
    rows = []
    for monomial, coeff in base.terms():
        text = '*'.join(name if e == 1 else f"{name}^{e}" for name, e in monomial) or '1'
        rows.append((text, coeff))
    return rows


class TableFormatter:
    def __init__(self, fmt='text', verbose=False):
        self.fmt = fmt
        self.verbose = verbose
        self.logger = get_logger()

    def _render(self, text_lines, json_payload, csv_header, csv_rows):
        self.logger.debug(f"Rendering {len(csv_rows)} row(s) as {self.fmt}")
        if self.fmt == 'json':
            return json.dumps(json_payload, indent=2, ensure_ascii=False) + '\n'
        if self.fmt == 'csv':
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator='\n')
            writer.writerow(csv_header)
            writer.writerows(csv_rows)
            return buffer.getvalue()
        return '\n'.join(text_lines) + '\n'

    def coefficients(self, expansion, title=''):
        """Full f/q/m table, graded-lex"""
        rows = list(expansion.items())
        text = [f"# {title}"] if title else []
        text += [f"({i},{j2},{k2})  {scalar_text(c)}" for (i, j2, k2), c in rows]
        payload = {
            'role': expansion.role,
            'max_degree': expansion.max_degree,
            'rows': [{'i': i, '2j': j2, '2k': k2, 'coefficient': scalar_json(c)} for (i, j2, k2), c in rows],
        }
        csv_rows = [(i, j2, k2, scalar_text(c)) for (i, j2, k2), c in rows]
        return self._render(text, payload, ('i', '2j', '2k', 'coefficient'), csv_rows)

    def dual_class(self, dual, dimensions=None, expanded=None):
        """Poincare dual rows plus header and optional mu_i, wp expansion"""
        rows = list(dual.items())
        header = [('na', dual.na), ('kappa', str(dual.kappa)), ('sign', dual.sign)]
        if dimensions is not None:
            header += [('d(kappa)', dimensions.asd_dimension), ('codim', dimensions.codim),
                       ('dim', dimensions.dim), ('normal_rank', dimensions.normal_rank),
                       ('vacuous', str(dimensions.vacuous).lower())]
        text = [f"# {name} = {value}" for name, value in header]
        text += [f"({i},{j2},{k2})  {scalar_text(c)}" for (i, j2, k2), c in rows]
        if expanded is not None:
            text.append("# mu-basis")
            text += [f"{monomial}  {scalar_text(c)}" for monomial, c in base_class_rows(expanded)]
        payload = {
            'header': {name: value for name, value in header},
            'rows': [{'i': i, '2j': j2, '2k': k2, 'coefficient': scalar_json(c)} for (i, j2, k2), c in rows],
        }
        if expanded is not None:
            payload['mu_basis'] = [{'monomial': m, 'coefficient': scalar_json(c)}
                                   for m, c in base_class_rows(expanded)]
        # one file, three sections: header values, (i,2j,2k) rows, mu-basis rows
        csv_rows = [('header', name, value) for name, value in header]
        csv_rows += [('dual', f"({i},{j2},{k2})", scalar_text(c)) for (i, j2, k2), c in rows]
        if expanded is not None:
            csv_rows += [('mu_basis', m, scalar_text(c)) for m, c in base_class_rows(expanded)]
        return self._render(text, payload, ('section', 'key', 'value'), csv_rows)

    def series(self, name, series, var='z'):
        """Even-power coefficients of a one-variable J-series"""
        powers = range(0, series.order + 1, 2)
        table = {power: series.coefficient(power) for power in powers}
        text = [f"# {name} through {var}^{series.order}"]
        text += [f"{var}^{power}  {scalar_text(c)}" for power, c in table.items()]
        payload = {'series': name, 'order': series.order,
                   'coefficients': [{'power': p, 'coefficient': scalar_json(c)} for p, c in table.items()]}
        csv_rows = [(p, scalar_text(c)) for p, c in table.items()]
        return self._render(text, payload, ('power', 'coefficient'), csv_rows)

    def report(self, report):
        """Three-way verification summary"""
        status = 'equal' if report.verified else 'DISCREPANCY'
        text = [f"# mode = {report.mode}", f"# max_order = {report.max_degree}",
                f"# points = {len(report.points)}", f"# discrepancies = {report.discrepancies}",
                f"status: {status}"]
        point_rows = []
        for p in report.points:
            row = {'na': str(p.na), 'kappa': str(p.kappa), 'equal': p.equal, 'log_equal': p.log_equal,
                   'discrepancy': list(p.discrepancy) if p.discrepancy else None,
                   'log_discrepancy': list(p.log_discrepancy) if p.log_discrepancy else None,
                   'values': {name: scalar_json(v) for name, v in p.values.items()}}
            point_rows.append(row)
            if not p.verified:
                where = p.discrepancy or p.log_discrepancy
                detail = ', '.join(f"{n}={scalar_text(v)}" for n, v in p.values.items())
                text.append(f"na={p.na} kappa={p.kappa}: first discrepancy at {tuple(where)} {detail}".rstrip())
        for check in report.pipeline:
            verdict = 'equal' if check['equal'] else f"differs at ch_{check['first_degree']}"
            text.append(f"pipeline lambda={check['lam']} kappa={check['kappa']} na={check['na']}: {verdict}")
        payload = {'mode': report.mode, 'max_order': report.max_degree, 'status': status,
                   'discrepancies': report.discrepancies, 'points': point_rows,
                   'pipeline': report.pipeline}
        csv_rows = [(r['na'], r['kappa'], str(r['equal'] and r['log_equal']).lower(),
                     '' if r['discrepancy'] is None else '/'.join(map(str, r['discrepancy'])))
                    for r in point_rows]
        return self._render(text, payload, ('na', 'kappa', 'equal', 'first_discrepancy'), csv_rows)
