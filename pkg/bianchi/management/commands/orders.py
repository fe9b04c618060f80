from concurrent.futures import ThreadPoolExecutor

from ...forms import OrdersForm
from ...orders import maximal_orders
from ...presets import PRESETS, preset_order
from ...reports import orders_frame
from ...units import unit_group
from ..base import BianchiCommand


def preset_label(order):
    """Name of a fast preset equal to ``order``, if any."""
    for name, preset in sorted(PRESETS.items()):
        if preset.slow or tuple(preset.form) != tuple(order.algebra.form.coefficients):
            continue
        if preset_order(name) == order:
            return name
    return None


class Command(BianchiCommand):
    help = 'Describe an order, or list the maximal orders containing it'
    form_class = OrdersForm
    name = 'orders'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--maximal', action='store_true', help='List every maximal order containing the order')
        parser.add_argument('--units', action='store_true', help='Also compute unit group orders')

    def compute(self, config):
        order = self.load(config)
        orders = maximal_orders(order) if config['maximal'] else [order]
        for i, found in enumerate(orders):
            if config['maximal']:
                found.label = preset_label(found) or f"{order.label or 'O'} maximal {i + 1}"
        groups = None
        if config['units'] or config['maximal']:
            with ThreadPoolExecutor(max_workers=config['threads']) as pool:
                groups = list(pool.map(unit_group, orders))
        self.frame = orders_frame(orders, groups)
        entries = []
        for i, found in enumerate(orders):
            discriminant = found.discriminant()
            entries.append({
                'label': found.label,
                'order': found.to_json(),
                'discriminant': discriminant.value,
                'factorization': {str(p): e for p, e in sorted(discriminant.factorization.items())},
                'star_stable': found.is_star_stable(),
                'clifford_stable': found.is_clifford_stable(),
                'code': self.frame['code'][i],
                'units': None if groups is None else groups[i].to_json(),
            })
        return {'source': order.label, 'count': len(orders), 'orders': entries}

    def table(self, payload, config):
        return self.frame
