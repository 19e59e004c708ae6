m=6
n=2
r = m % n
while r != 0:
    m = n
    n = r
    r = m % n
print "Greatest common divisor is:"
print n
