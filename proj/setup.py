import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])
        self.sourcedir = str(Path(__file__).parent.resolve())


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        extdir = Path(self.get_ext_fullpath(ext.name)).parent.resolve()
        build_temp = Path(self.build_temp) / ext.name
        build_temp.mkdir(parents=True, exist_ok=True)
        cmake_args = [
            f"-DCMAKE_BUILD_TYPE={'Debug' if self.debug else 'Release'}",
            f"-DPython3_EXECUTABLE={sys.executable}",
            "-DRIDGEFORGE_BUILD_TESTS=OFF",
            "-DRIDGEFORGE_BUILD_PYTHON=ON",
            f"-DRIDGEFORGE_PYTHON_OUTPUT_DIR={extdir}",
        ]
        subprocess.run(["cmake", ext.sourcedir, *cmake_args],
                       cwd=build_temp, check=True)
        subprocess.run(
            ["cmake", "--build", ".", "--target", "ridgeforge_python", "-j"],
            cwd=build_temp, check=True)


setup(
    packages=["ridgeforge"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("ridgeforge._core")],
    cmdclass={"build_ext": CMakeBuild},
    zip_safe=False,
)
