"""CMake-driven build of the qoc1d._core extension.

The C++ core, CLI and tests build with plain CMake; this shim only drives
the python module target so `pip install .` works without extra tooling.
"""

import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).resolve().parent
        ext_path = Path(self.get_ext_fullpath(ext.name)).resolve()
        out_dir = ext_path.parent
        out_dir.mkdir(parents=True, exist_ok=True)
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        cmake_args = [
            f"-DCMAKE_BUILD_TYPE={os.environ.get('QOC1D_BUILD_TYPE', 'Release')}",
            "-DQOC1D_BUILD_PYTHON=ON",
            "-DQOC1D_BUILD_TESTS=OFF",
            "-DQOC1D_BUILD_CLI=OFF",
            f"-DQOC1D_PYTHON_OUTPUT_DIR={out_dir}",
            f"-DPython_EXECUTABLE={sys.executable}",
        ]
        try:
            import pybind11

            cmake_args.append(f"-Dpybind11_DIR={pybind11.get_cmake_dir()}")
        except ImportError:
            pass

        subprocess.run(["cmake", str(source_dir), *cmake_args], cwd=build_dir, check=True)
        subprocess.run(
            ["cmake", "--build", ".", "--target", "qoc1d_pymodule", "--parallel"],
            cwd=build_dir,
            check=True,
        )


setup(
    packages=["qoc1d"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("qoc1d._core")],
    cmdclass={"build_ext": CMakeBuild},
    zip_safe=False,
)
