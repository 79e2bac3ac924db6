import os

from setuptools import setup, find_packages

dir_path = os.path.dirname(os.path.realpath(__file__))

with open(os.path.join(dir_path, 'rootsets', 'VERSION.txt'), 'r') as f:
    version = f.read().strip()

with open(os.path.join(dir_path, 'rootsets', 'requirements.txt'), 'r') as f:
    requirements = [line for line in f.read().splitlines() if line.strip()]

with open(os.path.join(dir_path, 'README.md'), 'r', encoding='utf-8') as f:
    long_description = f.read()

setup(
    name='rootsets-python',
    long_description=long_description,
    long_description_content_type='text/markdown',
    version=version,
    packages=find_packages(exclude=['unittest', 'unittest.*']),
    package_data={'rootsets': ['VERSION.txt', 'requirements.txt']},
    include_package_data=True,
    install_requires=requirements,
    extras_require={'test': ['hypothesis>=6.0.0']},
    python_requires='>=3.8',
    license='Apache 2.0',
    description='Root sets of polynomials and power series with unimodular coefficients',
    entry_points={
        'console_scripts': [
            'rootsets=rootsets.cli:main',
            'rsplot=rootsets.plot:main',
        ]
    }
)
