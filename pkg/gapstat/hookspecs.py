from pluggy import HookspecMarker

hookspec = HookspecMarker("gapstat")


@hookspec
def register_sequence_kinds():
    "Return a list of SequenceGenerator subclasses"


@hookspec
def register_verification_suites():
    "Return a list of VerificationSuite instances"
