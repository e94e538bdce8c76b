from pytest_bdd import scenarios, given, when, then
from GenFlag.varieties.picard import is_very_ample, very_ample_witness

from tests.corpus import fixture_document, fixture_spec

# Load scenarios from the feature file
# This function loads BDD scenarios defined in the specified feature file.
scenarios('../very_ample.feature')

# Shared variables
# Global variables to store the class or flag and the outcome of the check.
element = None
spec = None
outcome = None

@given('the class PIC-GR2-01')
def increasing_class():
    global element
    # Weights 0 and 1 on the two Grassmannian positions.
    element = fixture_document('PIC-GR2-01').body

@given('the class PIC-GR2-11')
def constant_class():
    global element
    # Equal weights on both positions.
    element = fixture_document('PIC-GR2-11').body

@given('the flag ZETA')
def zeta_flag():
    global spec
    # Positions ordered like omega followed by omega star.
    spec = fixture_spec('ZETA')

@when('very ampleness is checked')
def check_class():
    global outcome
    # Compare consecutive weights.
    outcome = is_very_ample(element)

@when('a very ample witness is requested')
def request_witness():
    global outcome
    # Try to embed the positions into the integers.
    outcome = very_ample_witness(spec)

@then('the class should be very ample')
def check_very_ample():
    # Strictly increasing weights.
    assert outcome is True

@then('the class should not be very ample')
def check_not_very_ample():
    # Weights are not strictly increasing.
    assert outcome is False

@then('no witness should be found')
def check_no_witness():
    # The flag is not projective.
    assert outcome is None
