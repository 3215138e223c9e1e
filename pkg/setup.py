import setuptools

with open("README.md", "r") as readme:
    long_description = readme.read()

setuptools.setup(
    name='zfrkit',
    version='0.1.0',
    author='Oleg Eterevsky',
    author_email='oleg@eterevsky.com',
    description='Re-derives and checks the constants of an explicit '
                'zero-free region for L-functions of newforms',
    long_description=long_description,
    long_description_content_type='text/markdown',
    packages=setuptools.find_packages(exclude=['examples', 'examples.*']),
    classifiers=[
        'Programming Language :: Python :: 3',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Development Status :: 3 - Alpha'
    ],
    python_requires='>=3.8',
    install_requires=['numpy>=1.17', 'mpmath>=1.1'],
    entry_points={
        'console_scripts': ['zfrkit = zfrkit.cli:main'],
    },
)
