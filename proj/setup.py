"""Builds the _wipt extension by delegating to the project's CMake build."""

import shutil
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
        build_dir.mkdir(parents=True, exist_ok=True)

        cmake_dir = subprocess.check_output(
            [sys.executable, "-m", "pybind11", "--cmakedir"], text=True
        ).strip()
        subprocess.check_call(
            [
                "cmake",
                str(source_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                "-DWIPT_BUILD_TESTS=OFF",
                "-DWIPT_BUILD_PYTHON=ON",
                f"-Dpybind11_DIR={cmake_dir}",
                f"-DPYTHON_EXECUTABLE={sys.executable}",
            ],
            cwd=build_dir,
        )
        subprocess.check_call(
            ["cmake", "--build", ".", "--target", "_wipt", "-j"], cwd=build_dir
        )

        built = next((build_dir / "python" / "wipt").glob("_wipt*.so"))
        dest = Path(self.get_ext_fullpath(ext.name)).resolve()
        dest.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built, dest)


setup(
    packages=["wipt"],
    package_dir={"wipt": "python/wipt"},
    ext_modules=[CMakeExtension("wipt._wipt")],
    cmdclass={"build_ext": CMakeBuild},
)
