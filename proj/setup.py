from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

core_sources = [
    "src/bitstring.cpp",
    "src/boolfn.cpp",
    "src/measures.cpp",
    "src/simplex.cpp",
    "src/codec.cpp",
    "src/ksum.cpp",
    "src/pointerfn.cpp",
    "src/groups.cpp",
    "src/constructions.cpp",
    "src/io.cpp",
    "src/py_module.cpp",
]

ext = Pybind11Extension(
    "tbf._core",
    sources=core_sources,
    include_dirs=["include", "vendor"],
    cxx_std=20,
    extra_compile_args=["-O2", "-pthread"],
    extra_link_args=["-pthread"],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
