import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

core_sources = sorted(
    p for p in glob.glob("src/*.cpp") if not p.endswith("cli.cpp")
)

ext = Pybind11Extension(
    "_bmslab",
    sources=core_sources + ["src/python/module.cpp"],
    include_dirs=["include", "vendor"],
    libraries=["gmpxx", "gmp"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
