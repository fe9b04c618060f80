from ...euclid import EuclideanFailure, gcd
from ...forms import GcdForm
from ..base import BianchiCommand


class Command(BianchiCommand):
    help = 'Left or right gcd of two order elements with a Bezout certificate'
    form_class = GcdForm
    name = 'gcd'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--a', required=True, help='First element, e.g. "2+e1"')
        parser.add_argument('--b', required=True, help='Second element')
        parser.add_argument('--side', choices=['left', 'right'], default='left')

    def compute(self, config):
        order = self.load(config)
        algebra = order.algebra
        a, b = algebra.parse(config['a']), algebra.parse(config['b'])
        result = gcd(order, a, b, config['side'])
        if isinstance(result, EuclideanFailure):
            return {
                'order': order.label,
                'euclidean': False,
                'dividend': str(result.dividend),
                'divisor': str(result.divisor),
                'divisor_norm': result.divisor_norm,
                'best_remainder': str(result.best_remainder),
                'remainder_norm': result.remainder_norm,
            }
        c, d = result.coeffs
        return {
            'order': order.label,
            'euclidean': True,
            'side': config['side'],
            'gcd': str(result.gcd),
            'certificate': [str(c), str(d)],
            'quotients': [str(q) for q in result.steps],
        }
