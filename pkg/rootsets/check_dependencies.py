import os

import pkg_resources

dir_path = os.path.dirname(os.path.realpath(__file__))

with open(os.path.join(dir_path, 'requirements.txt'), 'r') as f:
    requirement = [line for line in f.read().splitlines() if line.strip()]

if __name__ == '__main__':
    print("Checking rootsets dependencies...")
    missing = 0
    for req in requirement:
        try:
            pkg_resources.require([req])
        except Exception as e:
            missing += 1
            print(e)
    print(f'{len(requirement) - missing}/{len(requirement)} requirements satisfied')
