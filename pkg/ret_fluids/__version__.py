__name__ = 'ret_fluids'
__version__ = '0.1.0'
__author__ = 'Evgenii Dolotov'
__author_email__ = 'supernovaprotocol@gmail.com'
__description__ = 'Extended-thermodynamics model of relaxing power-law fluids: closed forms, ODE and finite-volume solvers'
