from fractions import Fraction

from django import forms
from django.conf import settings

from .acceptance import SUITES
from .algebra import DiagonalForm
from .codes import BinaryCode
from .exceptions import ParseError
from .presets import PRESETS


def preset_choices():
    return [('', 'none')] + [(name, preset.source) for name, preset in sorted(PRESETS.items())]


def parse_rationals(text, what):
    try:
        return [Fraction(part) for part in text.split(',') if part.strip()]
    except (ValueError, ZeroDivisionError):
        raise forms.ValidationError(f"{what} must be comma-separated rationals, got {text!r}")


class RunConfigForm(forms.Form):
    """Options shared by every command"""
    json = forms.BooleanField(required=False, label='Print JSON')
    out = forms.CharField(required=False, label='Output directory')
    threads = forms.IntegerField(min_value=1, required=False, label='Worker threads')
    save = forms.BooleanField(required=False, label='Write artifacts to BIANCHI_OUTPUT_DIR')

    def clean_out(self):
        out = self.cleaned_data.get('out')
        if not out and self.data.get('save'):
            out = getattr(settings, 'BIANCHI_OUTPUT_DIR', 'output')
        return out or None

    def clean_threads(self):
        return self.cleaned_data.get('threads') or 1


class OrderSourceForm(RunConfigForm):
    """Exactly one of a named preset, an order file or a form (whose Clifford order is used)"""
    form = forms.CharField(
        required=False,
        label='Form coefficients',
        help_text='Comma-separated positive rationals d_j with i_j^2 = -d_j, e.g. 1,1,3'
    )
    preset = forms.ChoiceField(choices=preset_choices, required=False, label='Named order')
    order = forms.CharField(required=False, label='Order JSON file')

    def clean_form(self):
        text = self.cleaned_data.get('form')
        if not text:
            return None
        try:
            return DiagonalForm.from_text(text)
        except ParseError as exc:
            raise forms.ValidationError(str(exc))

    def clean(self):
        cleaned = super().clean()
        given = [key for key in ('preset', 'order', 'form') if cleaned.get(key)]
        if not given and not self.errors:
            raise forms.ValidationError('Give one of --preset, --order or --form')
        if len(given) > 1:
            raise forms.ValidationError(f"Give only one order source, got {', '.join(given)}")
        return cleaned


class OrdersForm(OrderSourceForm):
    maximal = forms.BooleanField(required=False, label='List the maximal orders containing the order')
    units = forms.BooleanField(required=False, label='Report unit group orders')


class UnitsForm(OrderSourceForm):
    exhaustive = forms.BooleanField(required=False, label='Exhaustive search')
    heuristic = forms.IntegerField(min_value=1, required=False, label='Heuristic depth k')

    def clean(self):
        cleaned = super().clean()
        if cleaned.get('exhaustive') and cleaned.get('heuristic'):
            raise forms.ValidationError('Choose --exhaustive or --heuristic, not both')
        return cleaned


class GcdForm(OrderSourceForm):
    a = forms.CharField(label='First element')
    b = forms.CharField(label='Second element')
    side = forms.ChoiceField(choices=[('left', 'left'), ('right', 'right')], required=False)

    def clean_side(self):
        return self.cleaned_data.get('side') or 'left'


class DomainForm(OrderSourceForm):
    bound = forms.IntegerField(
        min_value=0,
        required=False,
        label='Denominator norm bound',
        help_text='Defaults to BIANCHI_DENOMINATOR_NORM_BOUND'
    )
    svg = forms.CharField(required=False, label='SVG output path')
    plane = forms.CharField(required=False, label='Section plane coordinates')
    slice = forms.CharField(required=False, label='Values of the other coordinates')

    def clean_bound(self):
        bound = self.cleaned_data.get('bound')
        if bound is None:
            return getattr(settings, 'BIANCHI_DENOMINATOR_NORM_BOUND', 10)
        return bound

    def clean_plane(self):
        text = self.cleaned_data.get('plane') or '0,1'
        try:
            axes = tuple(int(part) for part in text.split(','))
        except ValueError:
            raise forms.ValidationError(f"Plane must be two coordinate indices, got {text!r}")
        if len(axes) != 2 or axes[0] == axes[1] or min(axes) < 0:
            raise forms.ValidationError(f"Plane must be two distinct coordinate indices, got {text!r}")
        return axes

    def clean_slice(self):
        text = self.cleaned_data.get('slice')
        if not text:
            return None
        return parse_rationals(text, 'Slice values')


class PresentationForm(DomainForm):
    length = forms.IntegerField(min_value=1, max_value=6, required=False, label='Relation word length')
    order_bound = forms.IntegerField(min_value=1, required=False, label='Element order bound')
    check = forms.BooleanField(required=False, label='Check each crossing generator on its facet')

    def clean_length(self):
        return self.cleaned_data.get('length') or 3

    def clean_order_bound(self):
        return self.cleaned_data.get('order_bound') or 12


class IndexForm(DomainForm):
    suborder = forms.CharField(required=False, label='Suborder preset name or JSON file')
    gamma0 = forms.IntegerField(min_value=2, required=False, label='Level p of Gamma_0(p) in PSL2(Z)')
    orbits = forms.BooleanField(required=False, label='Use the cusp orbit route')
    cusps = forms.CharField(
        required=False,
        label='Extra cusp centers for the orbit route',
        help_text='Semicolon-separated paravectors, each comma-separated rationals'
    )
    cap = forms.IntegerField(min_value=1, required=False, label='Coset table cap')
    budget = forms.FloatField(min_value=0, required=False, label='Time budget in seconds')

    def clean_cusps(self):
        text = self.cleaned_data.get('cusps')
        if not text:
            return []
        return [parse_rationals(part, 'Cusp centers') for part in text.split(';') if part.strip()]

    def clean(self):
        if self.data.get('gamma0'):
            # Gamma_0(p) lives in PSL2(Z): no order source needed
            cleaned = RunConfigForm.clean(self)
            if self.data.get('suborder'):
                raise forms.ValidationError('Give --suborder or --gamma0, not both')
            return cleaned
        cleaned = super().clean()
        if not cleaned.get('suborder'):
            raise forms.ValidationError('Give --suborder or --gamma0')
        return cleaned


class BottCheckForm(RunConfigForm):
    form = forms.CharField(required=False, label='Form coefficients', help_text='Empty for the rank 0 form')
    samples = forms.IntegerField(min_value=1, required=False, label='Random samples per identity')
    seed = forms.IntegerField(required=False, label='Random seed')
    decompose = forms.CharField(required=False, label='Two generators spanning U, e.g. 1,2')
    orthogonal = forms.BooleanField(required=False, label='Report the orthogonal image of S and the translations')

    def clean_form(self):
        try:
            return DiagonalForm.from_text(self.cleaned_data.get('form') or '')
        except ParseError as exc:
            raise forms.ValidationError(str(exc))

    def clean_samples(self):
        return self.cleaned_data.get('samples') or getattr(settings, 'BIANCHI_BOTT_SAMPLES', 200)

    def clean_decompose(self):
        text = self.cleaned_data.get('decompose')
        if not text:
            return None
        try:
            u = tuple(int(part) for part in text.split(','))
        except ValueError:
            raise forms.ValidationError(f"U must be two generator indices, got {text!r}")
        if len(u) != 2:
            raise forms.ValidationError(f"U must be two generator indices, got {text!r}")
        return u


class CodeForm(RunConfigForm):
    length = forms.IntegerField(min_value=1, required=False, label='Code length')
    dimension = forms.IntegerField(min_value=0, required=False, label='Code dimension')
    list_doubly_even = forms.BooleanField(required=False, label='List the doubly even codes')
    build_order = forms.CharField(required=False, label='Generator words', help_text='e.g. 11110 or 11110000,11001100')
    euclidean = forms.BooleanField(required=False, label='Report the covering radius test')
    stretch = forms.BooleanField(required=False, label='Raise the length cap by one')

    def clean(self):
        cleaned = super().clean()
        cap = getattr(settings, 'BIANCHI_CODE_LENGTH_CAP', 9) + (1 if cleaned.get('stretch') else 0)
        words = cleaned.get('build_order')
        cleaned['code'] = None
        length = cleaned.get('length')
        if words:
            try:
                cleaned['code'] = BinaryCode.from_text(words, length)
            except ParseError as exc:
                raise forms.ValidationError(str(exc))
            length = cleaned['code'].length
        elif not cleaned.get('list_doubly_even'):
            raise forms.ValidationError('Give --list-doubly-even or --build-order')
        elif not length:
            raise forms.ValidationError('--list-doubly-even needs --length')
        if length and length > cap:
            raise forms.ValidationError(f"Code length {length} exceeds the cap {cap}")
        return cleaned


class AcceptForm(RunConfigForm):
    slow = forms.BooleanField(required=False, label='Include the slow suites')
    suites = forms.CharField(required=False, label='Comma-separated suite names')

    def clean_suites(self):
        text = self.cleaned_data.get('suites')
        if not text:
            return None
        names = [part.strip() for part in text.split(',') if part.strip()]
        unknown = [name for name in names if name not in SUITES]
        if unknown:
            raise forms.ValidationError(f"Unknown suites {', '.join(unknown)}; choose from {', '.join(SUITES)}")
        return names


def form_errors(form):
    """Form errors as one line, for CommandError messages."""
    lines = []
    for field, errors in form.errors.items():
        prefix = '' if field == '__all__' else f"{field}: "
        lines.extend(f"{prefix}{error}" for error in errors)
    return '; '.join(lines)
