"""Build the _gifs extension with CMake during pip installs.

The CMake project remains the single source of truth for compiler flags;
this shim only asks it for the `_gifs` target and drops the module next to
the `gifsgen` package.
"""

import os
import subprocess
import sys
from pathlib import Path

from setuptools import setup
from setuptools.command.build_ext import build_ext
from setuptools.extension import Extension


class CMakeExtension(Extension):
    def __init__(self, name: str, sourcedir: str = "") -> None:
        super().__init__(name, sources=[])
        self.sourcedir = os.fspath(Path(sourcedir).resolve())


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        out_dir = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        out_dir.mkdir(parents=True, exist_ok=True)

        cmake_args = [
            f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={out_dir}",
            f"-DPython3_EXECUTABLE={sys.executable}",
            "-DCMAKE_BUILD_TYPE=Release",
        ]
        build_temp = Path(self.build_temp) / ext.name
        build_temp.mkdir(parents=True, exist_ok=True)

        subprocess.run(["cmake", ext.sourcedir, *cmake_args],
                       cwd=build_temp, check=True)
        subprocess.run(
            ["cmake", "--build", ".", "--target", "_gifs",
             "--parallel", str(os.cpu_count() or 2)],
            cwd=build_temp, check=True)


setup(
    ext_modules=[CMakeExtension("gifsgen._gifs")],
    cmdclass={"build_ext": CMakeBuild},
)
