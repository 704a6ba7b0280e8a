from setuptools import Extension, setup

# The prime-field kernel is a pure speed-up; the package works without it
# (grembed.kernels falls back to the generic ring implementations), so the
# extension is marked optional and a failed compile does not fail the install.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "grembed._fpkern",
                ["src/grembed/_fpkern.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
