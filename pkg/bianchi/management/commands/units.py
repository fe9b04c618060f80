from ...forms import UnitsForm
from ...units import EXHAUSTIVE, HEURISTIC, unit_group
from ..base import BianchiCommand


class Command(BianchiCommand):
    help = 'Enumerate the unit group of an order'
    form_class = UnitsForm
    name = 'units'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--exhaustive', action='store_true', help='Enumerate all vectors of norm 1')
        parser.add_argument('--heuristic', type=int, metavar='K', help='Products of at most K short elements')

    def compute(self, config):
        order = self.load(config)
        mode = EXHAUSTIVE if config['exhaustive'] else HEURISTIC if config['heuristic'] else None
        group = unit_group(order, mode=mode, depth=config['heuristic'])
        closed = group.is_closed()
        return {
            'order': order.label,
            'units': group.to_json(),
            'element_orders': {str(k): v for k, v in sorted(group.order_profile().items())},
            'action_image_orders': {str(k): v for k, v in sorted(group.image_order_profile().items())},
            'closed': closed,
            'consistent': group.preserves_metric() and (closed or not group.rigorous),
        }
