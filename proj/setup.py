from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

CORE_SOURCES = [
    "src/geometry.cpp",
    "src/antenna.cpp",
    "src/channel.cpp",
    "src/handover.cpp",
    "src/montecarlo.cpp",
    "src/fitting.cpp",
    "src/estimation.cpp",
    "src/msd.cpp",
]

setup(
    ext_modules=[
        Pybind11Extension(
            "uavho._uavho",
            sources=["bindings/module.cpp", *CORE_SOURCES],
            include_dirs=["include"],
            cxx_std=20,
        )
    ],
    cmdclass={"build_ext": build_ext},
)
