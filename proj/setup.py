"""CMake-driven build of the coindex._core extension.

The C++ core, the CLI and the tests are all CMake targets; this shim lets
`pip install .` drive the same build and place the pybind11 module inside the
Python package. (scikit-build-core would replace this file wholesale; the shim
exists for environments where only setuptools is available.)
"""

import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        extdir = Path(self.get_ext_fullpath(ext.name)).parent.resolve()
        build_dir = Path(self.build_temp).resolve()
        build_dir.mkdir(parents=True, exist_ok=True)
        import pybind11

        cfg = "Release"
        cmake_args = [
            f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={extdir}",
            f"-DCMAKE_BUILD_TYPE={cfg}",
            f"-DPython_EXECUTABLE={sys.executable}",
            f"-Dpybind11_DIR={pybind11.get_cmake_dir()}",
        ]
        source_dir = Path(__file__).parent.resolve()
        subprocess.run(["cmake", "-S", str(source_dir), "-B", str(build_dir)] + cmake_args,
                       check=True)
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core", "-j",
             str(os.cpu_count() or 2)],
            check=True)


setup(
    packages=["coindex"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("coindex._core")],
    cmdclass={"build_ext": CMakeBuild},
    zip_safe=False,
)
