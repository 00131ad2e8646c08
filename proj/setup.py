from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "tracenet._core",
    sources=[
        "src/util.cpp",
        "src/wlan_log.cpp",
        "src/trajectory.cpp",
        "src/contact.cpp",
        "src/centrality.cpp",
        "src/seir.cpp",
        "src/analysis.cpp",
        "src/synth.cpp",
        "src/harness.cpp",
        "src/config.cpp",
        "src/io.cpp",
        "src/bindings/pymodule.cpp",
    ],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
