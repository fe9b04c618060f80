from ...codes import doubly_even_codes, euclidean_by_code, half_lattice, order_from_code
from ...forms import CodeForm
from ...orders import code_of
from ...reports import codes_frame
from ..base import BianchiCommand


class Command(BianchiCommand):
    help = 'Doubly even codes and the Clifford orders they generate'
    form_class = CodeForm
    name = 'codes'
    order_source = False

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--length', type=int, help='Code length n')
        parser.add_argument('--dimension', type=int, help='Only codes of this dimension')
        parser.add_argument('--list-doubly-even', action='store_true', dest='list_doubly_even')
        parser.add_argument('--build-order', dest='build_order', metavar='WORDS',
                            help='Close the Clifford order under the code words, e.g. 11110')
        parser.add_argument('--euclidean', action='store_true', help='Test rho^2(Lambda_C) < 4')
        parser.add_argument('--stretch', action='store_true', help='Allow one more than BIANCHI_CODE_LENGTH_CAP')

    def compute(self, config):
        self.frame = None
        if config['code'] is not None:
            return self.build(config)
        codes = doubly_even_codes(config['length'], config['dimension'])
        verdicts = [euclidean_by_code(c) for c in codes] if config['euclidean'] else None
        self.frame = codes_frame(codes, verdicts)
        entries = []
        for i, code in enumerate(codes):
            entry = code.to_json()
            if verdicts is not None:
                entry['rho_sq'] = verdicts[i].covering_radius_sq
                entry['euclidean'] = verdicts[i].euclidean
            entries.append(entry)
        return {'length': config['length'], 'count': len(codes), 'codes': entries}

    def build(self, config):
        code = config['code']
        built = order_from_code(code, stretch=config['stretch'])
        payload = {'code': code.to_json(), 'rounds': built.rounds}
        if built.order is None:
            payload.update({'closed': False, 'witness': str(built.witness)})
            return payload
        order = built.order
        payload.update({
            'closed': True,
            'order': order.to_json(),
            'discriminant': order.discriminant().value,
            'code_of': code_of(order).to_json(),
            'vec_is_half_lattice': order.vectors_of().same_points(half_lattice(code)),
        })
        if config['euclidean']:
            verdict = euclidean_by_code(code)
            payload.update({'rho_sq': verdict.covering_radius_sq, 'euclidean': verdict.euclidean})
        payload['consistent'] = payload['vec_is_half_lattice']
        return payload

    def table(self, payload, config):
        return self.frame
