from ...algebra import CliffordAlgebra
from ...bott import (
    BottCheck, PauliFrame, central_element, decomposition_iso, even_dimension_matches, psi_checks, rep_report,
    verify_decomposition,
)
from ...forms import BottCheckForm
from ...mobius import inversion, translation
from ...orders import clifford_order
from ...reports import bott_frame
from ..base import BianchiCommand


class Command(BianchiCommand):
    help = 'Check the Bott maps phi, iota and psi and the Pauli frame over Clf(q)'
    form_class = BottCheckForm
    name = 'bott_check'
    order_source = False

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--form', help='Form coefficients d_1,...,d_m (empty for rank 0)')
        parser.add_argument('--samples', type=int, help='Random samples per identity above arity 3')
        parser.add_argument('--seed', type=int, help='Random seed')
        parser.add_argument('--decompose', help='Split Clf(q) along the plane of two generators, e.g. 1,2')
        parser.add_argument('--orthogonal', action='store_true',
                            help='Report the orthogonal images of S and of the generator translations')

    def compute(self, config):
        algebra = CliffordAlgebra(config['form'])
        checks = psi_checks(algebra, config['samples'], config['seed'])
        checks.append(BottCheck('pauli_determinant', PauliFrame(algebra).check(), 1))
        checks.append(BottCheck('even_dimension', even_dimension_matches(algebra), 1))
        payload = {'form': algebra.form.to_json()}
        if config['decompose']:
            data = decomposition_iso(algebra, config['decompose'])
            passed = verify_decomposition(data)
            checks.append(BottCheck('decomposition', passed, 1))
            payload['decomposition'] = {
                'u': list(data.u),
                'v': list(data.v),
                'u_form': data.u_algebra.form.to_json(),
                'v_form': data.v_algebra.form.to_json(),
                'images': {name: str(x) for name, x in data.images.items()},
                'unimodular': data.unimodular,
            }
            if data.v and len(data.v) % 2:
                payload['decomposition']['central'] = str(central_element(data.v_algebra))
        if config['orthogonal']:
            order = clifford_order(algebra)
            reports = {'S': rep_report(inversion(algebra), order)}
            for i in range(algebra.arity + 1):
                v = algebra.paravector([int(j == i) for j in range(algebra.arity + 1)])
                reports[f"tau[{v}]"] = rep_report(translation(v), order)
            payload['orthogonal'] = reports
            passed = all(r['preserves_q'] and r['integral_entries'] and r['preserves_integral_q'] for r in reports.values())
            checks.append(BottCheck('orthogonal_integral', passed, len(reports)))
        self.frame = bott_frame(checks)
        payload['checks'] = [c._asdict() for c in checks]
        payload['consistent'] = all(c.passed for c in checks)
        return payload

    def table(self, payload, config):
        return self.frame
