import pluggy

from . import hookspecs

hookimpl = pluggy.HookimplMarker("gapstat")

pm = pluggy.PluginManager("gapstat")
pm.add_hookspecs(hookspecs)
# Third-party sequence kinds and suites register under this entry point group
pm.load_setuptools_entrypoints("gapstat")
