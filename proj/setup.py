# Thin CMake driver: the extension is configured and compiled by the
# project's own CMakeLists (with GEOLOG_BUILD_PYTHON=ON), then the built
# module is dropped where setuptools expects it.

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
        source_dir = Path(__file__).parent.resolve()
        build_dir = Path(self.build_temp).resolve()
        out_dir = Path(self.get_ext_fullpath(ext.name)).parent.resolve()
        build_dir.mkdir(parents=True, exist_ok=True)
        out_dir.mkdir(parents=True, exist_ok=True)

        import pybind11

        subprocess.run(
            [
                "cmake",
                str(source_dir),
                "-DGEOLOG_BUILD_PYTHON=ON",
                "-DSKBUILD=ON",  # skip test targets in the wheel build
                f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={out_dir}",
                f"-Dpybind11_DIR={pybind11.get_cmake_dir()}",
                f"-DPYTHON_EXECUTABLE={sys.executable}",
                "-DCMAKE_BUILD_TYPE=Release",
            ],
            cwd=build_dir,
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_geolog", "-j"],
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("geolog._geolog")],
    cmdclass={"build_ext": CMakeBuild},
)
